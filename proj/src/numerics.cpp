#include "ppstat/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace ppstat::numerics {

double simpson(const std::function<double(double)>& f, double a, double b,
               int panels) {
  if (panels < 1) throw std::invalid_argument("simpson: panels must be >= 1");
  const double h = (b - a) / panels;
  double sum_ends = 0.0, sum_mids = 0.0;
  for (int i = 1; i < panels; ++i) sum_ends += f(a + i * h);
  for (int i = 0; i < panels; ++i) sum_mids += f(a + (i + 0.5) * h);
  return h / 6.0 * (f(a) + f(b) + 2.0 * sum_ends + 4.0 * sum_mids);
}

namespace {

// Series for P(a,x), x < a+1.
double igamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction (Lentz) for Q(a,x), x >= a+1.
double igamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double igamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("igamma_p: domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return igamma_p_series(a, x);
  return 1.0 - igamma_q_cf(a, x);
}

double igamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("igamma_q: domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - igamma_p_series(a, x);
  return igamma_q_cf(a, x);
}

double chi_square_sf(double x, double dof) {
  return igamma_q(dof / 2.0, x / 2.0);
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  const double q = 2.0 * sum;
  if (q < 0.0) return 0.0;
  if (q > 1.0) return 1.0;
  return q;
}

LineFit ols_fit(const double* x, const double* y, std::size_t m) {
  if (m < 2) throw std::invalid_argument("ols_fit: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace ppstat::numerics
