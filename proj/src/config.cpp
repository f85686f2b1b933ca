#include "ppstat/config.hpp"

#include <fstream>
#include <set>

#include "ppstat/io.hpp"

namespace ppstat {

namespace {

const std::set<std::string> kExperiments = {
    "simulate", "coeffs", "estimate", "adapt", "risk", "conc", "bounds-table"};

// Keys accepted per experiment (on top of the common ones).
std::set<std::string> allowed_keys(const std::string& experiment) {
  std::set<std::string> keys = {"experiment", "seed", "threads", "out_dir", "kernel"};
  auto add = [&](std::initializer_list<const char*> more) {
    for (const char* k : more) keys.insert(k);
  };
  if (experiment == "simulate") add({"model", "n"});
  else if (experiment == "coeffs") add({"model", "n", "J"});
  else if (experiment == "estimate") add({"model", "n", "k", "gamma"});
  else if (experiment == "adapt") add({"model", "n", "k_max", "penalty_scale", "beta0_oracle"});
  else if (experiment == "risk")
    add({"model", "gamma", "n_grid", "R", "penalty_scale", "beta0_oracle"});
  else if (experiment == "conc")
    add({"model", "class", "n", "R", "x_grid", "eps", "exact_poisson_check"});
  else if (experiment == "bounds-table") add({"upsilon", "x_grid", "eps", "c1", "c3"});
  return keys;
}

std::vector<double> parse_x_grid(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) {
    for (const auto& [key, _] : j.items()) {
      if (key != "start" && key != "stop" && key != "step")
        throw ConfigError("x_grid: unknown key '" + key + "'");
    }
    const double start = j.at("start").get<double>();
    const double stop = j.at("stop").get<double>();
    const double step = j.at("step").get<double>();
    if (!(step > 0.0) || stop < start) throw ConfigError("x_grid: invalid range");
    std::vector<double> out;
    for (double x = start; x <= stop + 1e-12; x += step) out.push_back(x);
    return out;
  }
  throw ConfigError("x_grid: expected array or {start, stop, step}");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const nlohmann::json& doc,
                                         const std::string& experiment) {
  if (!kExperiments.count(experiment))
    throw ConfigError("unknown experiment '" + experiment + "'");
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  const auto allowed = allowed_keys(experiment);
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key))
      throw ConfigError("unknown config key '" + key + "' for experiment " + experiment);
  }

  ExperimentConfig c;
  c.experiment = experiment;
  c.config_hash = io::fnv1a(doc.dump());

  try {
    if (doc.contains("experiment")) {
      const auto declared = doc.at("experiment").get<std::string>();
      if (declared != experiment)
        throw ConfigError("config experiment '" + declared + "' does not match subcommand '" +
                          experiment + "'");
    }
    if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) {
      c.threads = doc.at("threads").get<unsigned>();
      if (c.threads < 1) throw ConfigError("threads must be >= 1");
    }
    if (doc.contains("out_dir")) c.out_dir = doc.at("out_dir").get<std::string>();
    if (doc.contains("kernel")) {
      c.kernel = doc.at("kernel").get<std::string>();
      if (c.kernel != "auto" && c.kernel != "scalar" && c.kernel != "avx2")
        throw ConfigError("kernel must be auto, scalar or avx2");
    }
    if (doc.contains("model")) c.model = IntensityModel::from_json(doc.at("model"));
    if (doc.contains("gamma")) c.gamma = basis::GammaSequence::from_json(doc.at("gamma"));
    if (doc.contains("class")) {
      std::vector<concentration::FunctionDescriptor> members;
      for (const auto& m : doc.at("class"))
        members.push_back(concentration::FunctionDescriptor::from_json(m));
      c.function_class.emplace(std::move(members));
    }
    if (doc.contains("n")) {
      c.n = doc.at("n").get<std::size_t>();
      if (c.n < 1) throw ConfigError("n must be >= 1");
    }
    if (doc.contains("n_grid")) {
      c.n_grid = doc.at("n_grid").get<std::vector<std::size_t>>();
      if (c.n_grid.empty()) throw ConfigError("n_grid must be nonempty");
      for (std::size_t v : c.n_grid)
        if (v < 1) throw ConfigError("n_grid entries must be >= 1");
    }
    if (doc.contains("R")) {
      c.R = doc.at("R").get<std::size_t>();
      if (c.R < 1) throw ConfigError("R must be >= 1");
    }
    if (doc.contains("x_grid")) c.x_grid = parse_x_grid(doc.at("x_grid"));
    if (doc.contains("J")) {
      c.J = doc.at("J").get<int>();
      if (c.J < 0) throw ConfigError("J must be >= 0");
    }
    if (doc.contains("k")) c.k = doc.at("k").get<int>();
    if (doc.contains("k_max")) c.k_max = doc.at("k_max").get<int>();
    if (doc.contains("penalty_scale")) {
      c.penalty_scale = doc.at("penalty_scale").get<std::string>();
      if (c.penalty_scale != "empirical" && c.penalty_scale != "oracle")
        throw ConfigError("penalty_scale must be empirical or oracle");
    }
    if (doc.contains("beta0_oracle")) c.beta0_oracle = doc.at("beta0_oracle").get<double>();
    if (doc.contains("c1")) c.c1 = doc.at("c1").get<double>();
    if (doc.contains("c3")) c.c3 = doc.at("c3").get<double>();
    if (doc.contains("eps")) {
      c.eps = doc.at("eps").get<double>();
      if (!(c.eps > 0.0)) throw ConfigError("eps must be > 0");
    }
    if (doc.contains("upsilon")) {
      c.upsilon = doc.at("upsilon").get<double>();
      if (!(c.upsilon > 0.0)) throw ConfigError("upsilon must be > 0");
    }
    if (doc.contains("exact_poisson_check"))
      c.exact_poisson_check = doc.at("exact_poisson_check").get<bool>();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config validation failed: ") + e.what());
  }

  // Per-experiment required fields.
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("experiment ") + experiment + " requires " + what);
  };
  if (experiment == "simulate" || experiment == "coeffs" || experiment == "estimate" ||
      experiment == "adapt") {
    require(c.model.has_value(), "a model");
    require(doc.contains("n"), "n");
  }
  if (experiment == "estimate") require(c.k >= 0 || c.gamma.has_value(), "k or gamma");
  if (experiment == "risk") {
    require(c.model.has_value(), "a model");
    require(c.gamma.has_value(), "gamma");
    require(!c.n_grid.empty(), "n_grid");
    require(doc.contains("R"), "R");
  }
  if (experiment == "conc") {
    require(c.model.has_value(), "a model");
    require(c.function_class.has_value(), "a function class");
    require(doc.contains("n"), "n");
    require(doc.contains("R"), "R");
    require(!c.x_grid.empty(), "x_grid");
    if (c.R < 1000)
      throw ConfigError("conc requires R >= 1000 (binomial standard errors too large below)");
  }
  if (experiment == "bounds-table") require(!c.x_grid.empty(), "x_grid");
  if (c.penalty_scale == "oracle" && !(c.beta0_oracle > 0.0))
    throw ConfigError("penalty_scale oracle requires beta0_oracle > 0");

  return c;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path,
                                              const std::string& experiment) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  return parse(doc, experiment);
}

}  // namespace ppstat
