#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "gradenorm/config.hpp"
#include "gradenorm/reports.hpp"
#include "gradenorm/suite.hpp"

namespace fs = std::filesystem;

namespace gradenorm {
namespace {

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("GRADENORM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommandOutput {
  Json report;
  std::string csv;       // empty = no csv artifact
  bool pass = false;
};

Json base_report(const std::string& op, const Json& config, Json result, bool pass) {
  Json report;
  report["op"] = op;
  report["config"] = config;
  if (config.contains("algebra")) report["spec"] = config["algebra"];
  if (config.contains("norm")) report["norms"] = Json{{"sigma", config["norm"]},
                                                      {"tau", config["norm"]},
                                                      {"rho", config["norm"]}};
  if (config.contains("norms")) report["norms"] = config["norms"];
  if (config.contains("params") && config["params"].contains("seed"))
    report["seed"] = config["params"]["seed"];
  if (config.contains("params") && config["params"].contains("tolerance"))
    report["tolerance"] = config["params"]["tolerance"];
  report["result"] = std::move(result);
  report["pass"] = pass;
  return report;
}

template <class S>
std::array<NormSpec<S>, 3> norm_triple(const Json& config, int generators) {
  if (config.contains("norms")) {
    return {norm_from_json<S>(config["norms"]["sigma"], generators),
            norm_from_json<S>(config["norms"]["tau"], generators),
            norm_from_json<S>(config["norms"]["rho"], generators)};
  }
  NormSpec<S> ns = norm_from_json<S>(config["norm"], generators);
  return {ns, ns, ns};
}

// Largest (p+q-1) w_rho(p+q) / (w_sigma(p) w_tau(q)) over the triangle
// p, q >= 1, p + q <= N actually reachable inside the truncation.
double triangle_delta(const WeightSpec& ws, const WeightSpec& wt, const WeightSpec& wr,
                      int n_cap) {
  double best = 0.0;
  for (int p = 1; p + 1 <= n_cap; ++p)
    for (int q = 1; p + q <= n_cap; ++q) {
      const double v = std::exp(std::log(static_cast<double>(p + q - 1)) +
                                wr.log_weight(p + q) - (ws.log_weight(p) + wt.log_weight(q)));
      best = std::max(best, v);
    }
  return best;
}

template <class S>
CommandOutput run_witness(const Json& config) {
  const auto spec = algebra_from_json<S>(config["algebra"]);
  auto ns = norm_from_json<S>(config["norm"], spec->generators);
  ns.weights.validate(spec->truncation);
  const Json& params = config["params"];
  const double tol = params["tolerance"].get<double>();
  const std::string variant = params["variant"].get<std::string>();

  Element<S> f(spec);
  if (params.contains("f_generator")) {
    f = monomial(spec, {params["f_generator"].get<int>()});
  } else if (auto w = find_nogo_witness(spec)) {
    f = *w;
  }

  CommandOutput out;
  if (f.is_zero()) {
    out.report = base_report("witness", config,
                             Json{{"found", false},
                                  {"note", "no admissible witness direction for this spec"}},
                             false);
    return out;
  }

  const WitnessReport<S> rep = variant == "nilpotent"
                                   ? nilpotent_witness(spec, ns, std::move(f))
                                   : witness_sweep(spec, ns, std::move(f));
  const double closed_gap =
      std::abs(rep.ratio - rep.closed_form_ratio) / std::max(rep.closed_form_ratio, 1e-300);
  out.pass = rep.ratio >= kSqrt43 - tol && closed_gap <= tol;
  Json result = witness_to_json(rep);
  result["floor"] = kSqrt43;
  result["closed_form_gap"] = closed_gap;
  out.report = base_report("witness", config, std::move(result), out.pass);
  return out;
}

CommandOutput run_audit_weights(const Json& config) {
  const int grid_bound = config["params"]["grid_bound"].get<int>();
  const double tol = config["params"]["tolerance"].get<double>();
  WeightSpec ws, wt, wr;
  if (config.contains("norms")) {
    ws = weights_from_json(config["norms"]["sigma"]);
    wt = weights_from_json(config["norms"]["tau"]);
    wr = weights_from_json(config["norms"]["rho"]);
  } else {
    ws = wt = wr = weights_from_json(config["norm"]);
  }
  const double target = config["params"].value("target_gamma", kSqrt3);
  AuditReport audit;
  try {
    audit = delta_audit(ws, wt, wr, grid_bound, target, tol);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  } catch (const std::out_of_range& err) {
    throw ConfigError(err.what());
  }
  CommandOutput out;
  out.pass = audit.pass;
  out.report = base_report("audit-weights", config, audit_to_json(audit), out.pass);
  return out;
}

template <class S>
CommandOutput run_sample_ratios(const Json& config, int threads) {
  const auto spec = algebra_from_json<S>(config["algebra"]);
  auto norms = norm_triple<S>(config, spec->generators);
  for (auto& ns : norms) ns.weights.validate(spec->truncation);
  const Json& params = config["params"];
  const int samples = params["samples"].get<int>();
  const std::uint64_t seed = params["seed"].get<std::uint64_t>();
  const double tol = params["tolerance"].get<double>();
  if (samples < 1) throw ConfigError("params.samples must be positive");

  double target;
  if (params.contains("target_gamma")) {
    target = params["target_gamma"].get<double>();
  } else {
    target = kSqrt3 * std::max(1.0, triangle_delta(norms[0].weights, norms[1].weights,
                                                   norms[2].weights, spec->truncation));
  }

  const RatioReport rep =
      ratio_sample(spec, norms[0], norms[1], norms[2], samples, seed, threads);
  CommandOutput out;
  out.pass = rep.max_ratio <= target + tol;
  Json result = ratio_to_json(rep);
  result["target_gamma"] = target;
  if (!out.pass) {
    const detail::SampleBasis<S> basis(spec, norms[0], norms[1]);
    auto [a, b, deg_a, deg_b] = sample_pair(basis, spec, seed, rep.argmax_trial);
    result["witness"] = Json{{"a", element_to_json(a)},
                             {"b", element_to_json(b)},
                             {"ratio", rep.max_ratio}};
  }
  out.report = base_report("sample-ratios", config, std::move(result), out.pass);
  out.csv = ratio_csv(rep);
  return out;
}

template <class S>
CommandOutput run_best_constant(const Json& config) {
  const auto spec = algebra_from_json<S>(config["algebra"]);
  auto norms = norm_triple<S>(config, spec->generators);
  for (auto& ns : norms) ns.weights.validate(spec->truncation);
  const Json& params = config["params"];
  const int cap = params.value("degree_cap", spec->truncation);
  const double tol = params["tolerance"].get<double>();
  const int max_iter = params["max_iterations"].get<int>();

  const BestConstantReport rep =
      best_constant(spec, norms[0], norms[1], norms[2], cap, tol, max_iter);
  CommandOutput out;
  out.pass = rep.converged;
  out.report = base_report("best-constant", config, best_constant_to_json(rep), out.pass);
  return out;
}

template <class S>
CommandOutput run_gamma_check(const Json& config) {
  const auto spec = algebra_from_json<S>(config["algebra"]);
  const NormSpec<S> ns = norm_from_json<S>(config["norm"], spec->generators);
  if (!ns.twist)
    throw ConfigError("gamma-check needs gamma_diag or gamma_matrix in the norm block");
  ns.weights.validate(spec->truncation);
  const Json& params = config["params"];
  const int pairs = params["pairs"].get<int>();
  const std::uint64_t seed = params["seed"].get<std::uint64_t>();
  const double tol = params["tolerance"].get<double>();

  const GammaOperator<S>& gamma = ns.twist->op;
  const AlgebraShape shape = spec->shape();
  const int half = spec->truncation / 2;

  double max_residual = 0.0;
  for (int trial = 0; trial < pairs; ++trial) {
    TrialRng rng(seed, static_cast<std::uint64_t>(trial));
    Element<S> a(spec), b(spec);
    for (int n = 0; n <= half; ++n)
      for (const auto& m : degree_basis(shape, n)) {
        a.add_term(m, S(rng.normal()));
        b.add_term(m, S(rng.normal()));
      }
    max_residual = std::max(max_residual, multiplicativity_residual(gamma, a, b));
  }

  // Norm contraction ||Gamma(A)^-rho a||_n <= 2^(-n rho) ||a||_n for A >= 2 id.
  bool bound_checked = false;
  bool bound_ok = true;
  double bound_margin = 0.0;
  const double rho = std::abs(ns.twist->exponent);
  if (gamma.min_eigenvalue() >= 2.0 && rho > 0.0) {
    bound_checked = true;
    for (int n = 0; n <= spec->truncation; ++n) {
      TrialRng rng(seed ^ 0xB0B0ULL, static_cast<std::uint64_t>(n));
      Element<S> a(spec);
      for (const auto& m : degree_basis(shape, n)) a.add_term(m, S(rng.normal()));
      if (a.is_zero()) continue;
      const double lhs = degree_norm(gamma_power_apply(gamma, -rho, a), ns.gram);
      const double rhs = std::exp2(-static_cast<double>(n) * rho) * degree_norm(a, ns.gram);
      bound_margin = std::max(bound_margin, lhs - rhs);
      if (lhs > rhs + 1e-9) bound_ok = false;
    }
  }

  CommandOutput out;
  out.pass = max_residual <= tol && bound_ok;
  Json result;
  result["pairs"] = pairs;
  result["max_residual"] = max_residual;
  result["residual_tolerance"] = tol;
  result["contraction_bound"] =
      Json{{"checked", bound_checked}, {"ok", bound_ok}, {"margin", bound_margin}};
  out.report = base_report("gamma-check", config, std::move(result), out.pass);
  return out;
}

template <class S>
CommandOutput run_violation_search(const Json& config) {
  const auto spec = algebra_from_json<S>(config["algebra"]);
  Gram gram = Gram::Standard;
  if (config.contains("norm") && config["norm"].contains("gram")) {
    try {
      gram = gram_from_name(config["norm"]["gram"].get<std::string>());
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what());
    }
  }
  const Json& params = config["params"];
  ViolationOptions opt;
  opt.seed = params["seed"].get<std::uint64_t>();
  opt.restarts = params["restarts"].get<int>();
  opt.steps = params["steps"].get<int>();
  opt.tolerance = params["tolerance"].get<double>();

  const WitnessReport<S> rep = violation_search(spec, gram, opt);
  CommandOutput out;
  out.pass = rep.found;
  out.report = base_report("violation-search", config, witness_to_json(rep), out.pass);
  return out;
}

CommandOutput run_suite(int threads) {
  const SuiteReport rep = run_acceptance_suite(threads);
  for (const auto& c : rep.criteria)
    std::printf("criterion %d [%s] %s — %s (%.2f s)\n", c.id, c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.detail.c_str(), c.seconds);
  CommandOutput out;
  out.pass = rep.all_pass();
  Json config = Json::object();
  out.report = base_report("suite", config, suite_to_json(rep), out.pass);
  return out;
}

void write_outputs(const Json& config, const std::string& command, const std::string& out_flag,
                   const CommandOutput& result, double duration_seconds) {
  fs::path dir = ".";
  if (config.contains("output") && config["output"].contains("dir"))
    dir = config["output"]["dir"].get<std::string>();
  if (!out_flag.empty()) dir = out_flag;
  fs::create_directories(dir);

  std::string report_name = command + ".report.json";
  if (config.contains("output") && config["output"].contains("report"))
    report_name = config["output"]["report"].get<std::string>();
  const fs::path report_path = dir / report_name;
  {
    std::ofstream os(report_path);
    os << result.report.dump(2) << "\n";
  }
  {
    // Timestamps live in a sibling metadata file so reports stay
    // byte-identical across reruns.
    std::ofstream os(report_path.string() + ".meta.json");
    os << Json{{"timestamp", timestamp_utc()}, {"duration_seconds", duration_seconds}}.dump(2)
       << "\n";
  }
  if (!result.csv.empty()) {
    std::string csv_name = "ratios.csv";
    if (config.contains("output") && config["output"].contains("csv"))
      csv_name = config["output"]["csv"].get<std::string>();
    std::ofstream os(dir / csv_name);
    os << result.csv;
  }
  std::printf("%s: %s (report: %s)\n", command.c_str(), result.pass ? "pass" : "FAIL",
              report_path.string().c_str());
}

int run_cli(int argc, char** argv) {
  CLI::App app{"gradenorm: norm certification lab for finite graded algebras"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {"witness",        "audit-weights",
                                             "sample-ratios",  "best-constant",
                                             "gamma-check",    "violation-search",
                                             "suite"};
  std::string config_path;
  std::string out_flag;
  long long seed_flag = -1;
  int threads_flag = 0;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)");
    sub->add_option("--seed", seed_flag, "override params.seed");
    sub->add_option("--out", out_flag, "output directory");
    sub->add_option("--threads", threads_flag, "worker cap (env GRADENORM_THREADS)");
    sub->allow_extras();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err) == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  const int threads = resolve_threads(threads_flag);

  try {
    Json config = Json::object();
    if (!config_path.empty()) config = load_config_file(config_path);
    if (command != "suite" && config_path.empty())
      throw ConfigError("--config is required for " + command);
    for (const auto& extra : sub->remaining()) {
      std::string token = extra;
      if (token.rfind("--", 0) == 0) token = token.substr(2);
      const auto eq = token.find('=');
      if (eq == std::string::npos)
        throw ConfigError("unrecognized argument: " + extra + " (overrides use --key=value)");
      apply_override(config, token.substr(0, eq), token.substr(eq + 1));
    }
    if (seed_flag >= 0) config["params"]["seed"] = seed_flag;
    config = resolve_config(command, std::move(config));

    const auto t0 = std::chrono::steady_clock::now();
    CommandOutput result;
    const Field field = config_field(config);
    auto dispatch = [&](auto scalar_tag) {
      using S = decltype(scalar_tag);
      if (command == "witness") return run_witness<S>(config);
      if (command == "sample-ratios") return run_sample_ratios<S>(config, threads);
      if (command == "best-constant") return run_best_constant<S>(config);
      if (command == "gamma-check") return run_gamma_check<S>(config);
      if (command == "violation-search") return run_violation_search<S>(config);
      throw ConfigError("unhandled command: " + command);
    };
    if (command == "suite") {
      result = run_suite(threads);
    } else if (command == "audit-weights") {
      result = run_audit_weights(config);
    } else if (field == Field::Complex) {
      result = dispatch(std::complex<double>{});
    } else {
      result = dispatch(double{});
    }
    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(config, command, out_flag, result, duration);
    return result.pass ? 0 : 1;
  } catch (const ConfigError& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
}

}  // namespace
}  // namespace gradenorm

int main(int argc, char** argv) { return gradenorm::run_cli(argc, argv); }
