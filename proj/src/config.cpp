#include "gradenorm/config.hpp"

#include <fstream>
#include <set>

namespace gradenorm {

namespace {

void require_keys(const Json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required = {}) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
  for (const auto& key : required)
    if (!obj.contains(key)) throw ConfigError(where + " is missing required key '" + key + "'");
}

const std::set<std::string> kAlgebraKeys = {"kind",      "generators", "truncation", "field",
                                            "chi",       "even_count", "omega"};
const std::set<std::string> kNormKeys = {"kind",       "w_family",    "sigma",
                                         "rho",        "s",           "weights",
                                         "gram",       "gamma_diag",  "gamma_matrix",
                                         "gamma_exponent"};
const std::set<std::string> kOutputKeys = {"dir", "report", "csv"};

struct CommandSpec {
  bool needs_algebra = false;
  bool allows_norm = false;
  bool allows_norm_triple = false;
  bool needs_norm = false;
  std::set<std::string> params_allowed;
  std::set<std::string> params_required;
  Json params_defaults;
};

CommandSpec command_spec(const std::string& command) {
  CommandSpec c;
  if (command == "witness") {
    c.needs_algebra = true;
    c.allows_norm = true;
    c.needs_norm = true;
    c.params_allowed = {"seed", "f_generator", "variant", "tolerance"};
    c.params_defaults = Json{{"seed", 1}, {"variant", "sweep"}, {"tolerance", 1e-9}};
  } else if (command == "audit-weights") {
    c.allows_norm = true;
    c.allows_norm_triple = true;
    c.needs_norm = true;
    c.params_allowed = {"grid_bound", "target_gamma", "tolerance", "seed"};
    c.params_required = {"grid_bound"};
    c.params_defaults = Json{{"tolerance", 1e-9}};
  } else if (command == "sample-ratios") {
    c.needs_algebra = true;
    c.allows_norm = true;
    c.allows_norm_triple = true;
    c.needs_norm = true;
    c.params_allowed = {"samples", "seed", "target_gamma", "tolerance"};
    c.params_required = {"samples"};
    c.params_defaults = Json{{"seed", 1}, {"tolerance", 1e-9}};
  } else if (command == "best-constant") {
    c.needs_algebra = true;
    c.allows_norm = true;
    c.allows_norm_triple = true;
    c.needs_norm = true;
    c.params_allowed = {"degree_cap", "tolerance", "max_iterations", "seed"};
    c.params_defaults = Json{{"tolerance", 1e-10}, {"max_iterations", 50000}};
  } else if (command == "gamma-check") {
    c.needs_algebra = true;
    c.allows_norm = true;
    c.needs_norm = true;
    c.params_allowed = {"pairs", "seed", "tolerance"};
    c.params_defaults = Json{{"pairs", 1000}, {"seed", 1}, {"tolerance", 1e-10}};
  } else if (command == "violation-search") {
    c.needs_algebra = true;
    c.allows_norm = true;
    c.params_allowed = {"seed", "restarts", "steps", "tolerance"};
    c.params_defaults =
        Json{{"seed", 1}, {"restarts", 4}, {"steps", 120}, {"tolerance", 1e-12}};
  } else if (command == "suite") {
    c.params_allowed = {"seed"};
    c.params_defaults = Json::object();
  } else {
    throw ConfigError("unknown command: " + command);
  }
  return c;
}

void validate_norm_block(const Json& block, const std::string& where) {
  require_keys(block, where, kNormKeys);
  if (!block.contains("w_family") && !block.contains("kind"))
    throw ConfigError(where + " needs a w_family");
}

}  // namespace

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json config;
  try {
    in >> config;
  } catch (const Json::parse_error& err) {
    throw ConfigError("malformed config " + path + ": " + err.what());
  }
  return config;
}

void apply_override(Json& config, const std::string& dotted_key, const std::string& value) {
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = dotted_key.find('.', start);
    const std::string part = dotted_key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("bad override key: " + dotted_key);
    if (dot == std::string::npos) {
      Json parsed = Json::parse(value, nullptr, false);
      (*node)[part] = parsed.is_discarded() ? Json(value) : parsed;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

Json resolve_config(const std::string& command, Json config) {
  const CommandSpec cs = command_spec(command);
  std::set<std::string> top_allowed = {"params", "output"};
  if (cs.needs_algebra) top_allowed.insert("algebra");
  if (cs.allows_norm) top_allowed.insert("norm");
  if (cs.allows_norm_triple) top_allowed.insert("norms");
  require_keys(config, "config", top_allowed);

  if (cs.needs_algebra) {
    if (!config.contains("algebra")) throw ConfigError("config is missing the algebra block");
    require_keys(config["algebra"], "algebra", kAlgebraKeys, {"kind", "generators", "truncation"});
    if (!config["algebra"].contains("field")) config["algebra"]["field"] = "real";
  }

  const bool has_norm = config.contains("norm");
  const bool has_triple = config.contains("norms");
  if (has_norm && has_triple)
    throw ConfigError("config must use either 'norm' or 'norms', not both");
  if (cs.needs_norm && !has_norm && !has_triple)
    throw ConfigError("config is missing a norm block");
  if (has_triple && !cs.allows_norm_triple)
    throw ConfigError("command '" + command + "' uses a single norm block");
  if (has_norm && command == "violation-search") {
    // Only the Gram convention matters here; the weights are flat.
    require_keys(config["norm"], "norm", {"gram"});
  } else if (has_norm) {
    validate_norm_block(config["norm"], "norm");
  }
  if (has_triple) {
    require_keys(config["norms"], "norms", {"sigma", "tau", "rho"}, {"sigma", "tau", "rho"});
    for (const char* part : {"sigma", "tau", "rho"})
      validate_norm_block(config["norms"][part], std::string("norms.") + part);
  }

  if (!config.contains("params")) config["params"] = Json::object();
  require_keys(config["params"], "params", cs.params_allowed, cs.params_required);
  for (const auto& [key, value] : cs.params_defaults.items())
    if (!config["params"].contains(key)) config["params"][key] = value;

  if (config.contains("output")) require_keys(config["output"], "output", kOutputKeys);

  return config;
}

Field config_field(const Json& config) {
  if (!config.contains("algebra")) return Field::Real;
  const std::string f = config["algebra"].value("field", "real");
  if (f == "real") return Field::Real;
  if (f == "complex") return Field::Complex;
  throw ConfigError("algebra.field must be 'real' or 'complex'");
}

namespace {

template <class S>
S scalar_from_json(const Json& v, const std::string& where) {
  if (v.is_number()) return S(v.get<double>());
  if constexpr (ScalarTraits<S>::is_complex) {
    if (v.is_object() && v.contains("re"))
      return S(v.value("re", 0.0), v.value("im", 0.0));
    if (v.is_array() && v.size() == 2)
      return S(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError(where + ": expected a scalar entry");
}

}  // namespace

template <class S>
SpecPtr<S> algebra_from_json(const Json& algebra) {
  AlgebraSpec<S> spec;
  try {
    spec.kind = kind_from_name(algebra.at("kind").get<std::string>());
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  spec.generators = algebra.at("generators").get<int>();
  spec.truncation = algebra.at("truncation").get<int>();
  if (algebra.contains("chi")) spec.chi = algebra["chi"].get<int>();
  if (algebra.contains("even_count")) spec.even_count = algebra["even_count"].get<int>();
  if (algebra.contains("omega")) {
    const Json& omega = algebra["omega"];
    if (!omega.is_array() || static_cast<int>(omega.size()) != spec.generators)
      throw ConfigError("algebra.omega must be a d x d matrix");
    for (const auto& row : omega) {
      if (!row.is_array() || static_cast<int>(row.size()) != spec.generators)
        throw ConfigError("algebra.omega must be a d x d matrix");
      for (const auto& v : row)
        spec.pairing.push_back(scalar_from_json<S>(v, "algebra.omega"));
    }
  }
  try {
    return make_spec(std::move(spec));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
}

template SpecPtr<double> algebra_from_json<double>(const Json&);
template SpecPtr<std::complex<double>> algebra_from_json<std::complex<double>>(const Json&);

WeightSpec weights_from_json(const Json& block) {
  const std::string family_name = block.contains("w_family")
                                      ? block["w_family"].get<std::string>()
                                      : block["kind"].get<std::string>();
  WeightSpec w;
  try {
    w.family = weight_family_from_name(family_name);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  if (w.family == WeightSpec::Family::SigmaRhoS) {
    w.sigma = block.value("sigma", 0.0);
    w.rho = block.value("rho", 0.0);
    w.s = block.value("s", 0.0);
  }
  if (w.family == WeightSpec::Family::Explicit) {
    if (!block.contains("weights"))
      throw ConfigError("explicit weight family needs a 'weights' list");
    w.values = block["weights"].get<std::vector<double>>();
    if (w.values.empty() || w.values[0] != 1.0)
      throw ConfigError("explicit weights must start with w_0 = 1");
  }
  return w;
}

template <class S>
NormSpec<S> norm_from_json(const Json& block, int generators) {
  NormSpec<S> ns;
  ns.weights = weights_from_json(block);
  if (block.contains("gram")) {
    try {
      ns.gram = gram_from_name(block["gram"].get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what());
    }
  }
  const bool has_diag = block.contains("gamma_diag");
  const bool has_matrix = block.contains("gamma_matrix");
  if (has_diag && has_matrix)
    throw ConfigError("norm block: use gamma_diag or gamma_matrix, not both");
  if (has_diag || has_matrix) {
    GammaTwist<S> twist;
    twist.exponent = block.value("gamma_exponent", 1.0);
    if (has_diag) {
      std::vector<S> diag;
      for (const auto& v : block["gamma_diag"])
        diag.push_back(scalar_from_json<S>(v, "gamma_diag"));
      if (static_cast<int>(diag.size()) != generators)
        throw ConfigError("gamma_diag must list d eigenvalues");
      twist.op = GammaOperator<S>::diagonal(std::move(diag));
    } else {
      const Json& mat = block["gamma_matrix"];
      if (!mat.is_array() || static_cast<int>(mat.size()) != generators)
        throw ConfigError("gamma_matrix must be d x d");
      std::vector<S> entries;
      for (const auto& row : mat) {
        if (!row.is_array() || static_cast<int>(row.size()) != generators)
          throw ConfigError("gamma_matrix must be d x d");
        for (const auto& v : row) entries.push_back(scalar_from_json<S>(v, "gamma_matrix"));
      }
      twist.op = GammaOperator<S>::dense(generators, std::move(entries));
      try {
        twist.op.ensure_spectral();
      } catch (const std::exception& err) {
        throw ConfigError(err.what());
      }
    }
    if (twist.op.min_eigenvalue() < 2.0)
      throw ConfigError("gamma twist needs an operator with min eigenvalue >= 2");
    ns.twist = std::move(twist);
  }
  return ns;
}

template NormSpec<double> norm_from_json<double>(const Json&, int);
template NormSpec<std::complex<double>> norm_from_json<std::complex<double>>(const Json&, int);

}  // namespace gradenorm
