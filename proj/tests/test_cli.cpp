#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using Json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() /
          ("gradenorm_cli_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

fs::path write_config(const Workdir& w, const std::string& name, const Json& config) {
  const fs::path p = w.dir / name;
  std::ofstream os(p);
  os << config.dump(2);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(GRADENORM_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json grassmann_config(int d, int n) {
  return Json{{"algebra", {{"kind", "antisymmetric"}, {"generators", d}, {"truncation", n}}},
              {"norm", {{"w_family", "factorial_inv"}}}};
}

}  // namespace

TEST_CASE("witness command reproduces the sqrt(4/3) constant") {
  Workdir w;
  const auto cfg = write_config(w, "witness.json", grassmann_config(2, 2));
  const int code =
      run("witness --config " + cfg.string() + " --out " + (w.dir / "out").string());
  CHECK(code == 0);
  const Json report = Json::parse(slurp(w.dir / "out" / "witness.report.json"));
  CHECK(report["op"] == "witness");
  CHECK(report["pass"] == true);
  CHECK(std::abs(report["result"]["ratio"].get<double>() - 1.1547005383792515) < 1e-9);
  CHECK(report["config"]["params"].contains("variant"));  // defaults are embedded
  // timestamps live in the sibling metadata file, not in the report
  CHECK(!slurp(w.dir / "out" / "witness.report.json.meta.json").empty());
  CHECK(report.dump().find("timestamp") == std::string::npos);
}

TEST_CASE("audit-weights: factorial shift certifies delta = 1") {
  Workdir w;
  Json config{{"norm", {{"w_family", "factorial_inv_shift"}}},
              {"params", {{"grid_bound", 50}}}};
  const auto cfg = write_config(w, "audit.json", config);
  const int code =
      run("audit-weights --config " + cfg.string() + " --out " + (w.dir / "out").string());
  CHECK(code == 0);
  const Json report = Json::parse(slurp(w.dir / "out" / "audit-weights.report.json"));
  CHECK(report["result"]["delta_min"].get<double>() == 1.0);
  CHECK(report["result"]["argmax"]["p"] == 1);
}

TEST_CASE("audit-weights: flat weights fail the sqrt(3) target") {
  Workdir w;
  Json config{{"norm", {{"w_family", "sigma_rho_s"}, {"sigma", 0}, {"rho", 0}, {"s", 0}}},
              {"params", {{"grid_bound", 10}}}};
  const auto cfg = write_config(w, "flat.json", config);
  const int code =
      run("audit-weights --config " + cfg.string() + " --out " + (w.dir / "out").string());
  CHECK(code == 1);
  const Json report = Json::parse(slurp(w.dir / "out" / "audit-weights.report.json"));
  CHECK(report["result"]["delta_min"].get<double>() == 19.0);
  CHECK(report["pass"] == false);
}

TEST_CASE("sample-ratios: byte-identical reports on reruns, csv emitted") {
  Workdir w;
  Json config = grassmann_config(4, 4);
  config["params"] = Json{{"samples", 300}, {"seed", 11}};
  const auto cfg = write_config(w, "sample.json", config);
  const std::string out1 = (w.dir / "out1").string();
  const std::string out2 = (w.dir / "out2").string();
  CHECK(run("sample-ratios --config " + cfg.string() + " --out " + out1) == 0);
  CHECK(run("sample-ratios --config " + cfg.string() + " --out " + out2 + " --threads 3") ==
        0);
  const std::string r1 = slurp(fs::path(out1) / "sample-ratios.report.json");
  const std::string r2 = slurp(fs::path(out2) / "sample-ratios.report.json");
  CHECK(r1 == r2);
  const std::string c1 = slurp(fs::path(out1) / "ratios.csv");
  const std::string c2 = slurp(fs::path(out2) / "ratios.csv");
  CHECK(c1 == c2);
  CHECK(c1.rfind("trial,degree_a,degree_b,ratio\n", 0) == 0);
}

TEST_CASE("sample-ratios: exceeding the target exits 1 with a witness pair") {
  Workdir w;
  // Flat weights with a sub-unit target: scalar-scalar trials hit ratio 1.
  Json config{{"algebra", {{"kind", "symmetric"}, {"generators", 1}, {"truncation", 4}}},
              {"norm", {{"w_family", "flat"}}},
              {"params", {{"samples", 200}, {"seed", 5}, {"target_gamma", 0.5}}}};
  const auto cfg = write_config(w, "violate.json", config);
  const int code =
      run("sample-ratios --config " + cfg.string() + " --out " + (w.dir / "out").string());
  CHECK(code == 1);
  const Json report = Json::parse(slurp(w.dir / "out" / "sample-ratios.report.json"));
  CHECK(report["pass"] == false);
  CHECK(report["result"].contains("witness"));
  CHECK(report["result"]["witness"]["ratio"].get<double>() > 0.5);
}

TEST_CASE("sample-ratios: flat weights break the sqrt(3) target at modest degree") {
  Workdir w;
  Json config{{"algebra", {{"kind", "symmetric"}, {"generators", 1}, {"truncation", 14}}},
              {"norm", {{"w_family", "flat"}}},
              {"params",
               {{"samples", 10000}, {"seed", 1}, {"target_gamma", 1.7320508075688772}}}};
  const auto cfg = write_config(w, "flat.json", config);
  const int code =
      run("sample-ratios --config " + cfg.string() + " --out " + (w.dir / "out").string());
  CHECK(code == 1);
  const Json report = Json::parse(slurp(w.dir / "out" / "sample-ratios.report.json"));
  CHECK(report["result"]["max_ratio"].get<double>() > 1.7320508075688772);
  CHECK(report["result"].contains("witness"));
}

TEST_CASE("violation-search: standard gram finds the blades, normalized does not") {
  Workdir w;
  Json config{{"algebra", {{"kind", "antisymmetric"}, {"generators", 6}, {"truncation", 6}}}};
  const auto cfg = write_config(w, "violation.json", config);
  CHECK(run("violation-search --config " + cfg.string() + " --out " +
            (w.dir / "std").string()) == 0);
  const Json report = Json::parse(slurp(w.dir / "std" / "violation-search.report.json"));
  CHECK(std::abs(report["result"]["ratio"].get<double>() - 1.1547005383792515) < 1e-12);

  Json norm_cfg = config;
  norm_cfg["norm"] = Json{{"gram", "normalized"}};
  norm_cfg["params"] = Json{{"restarts", 2}, {"steps", 30}};
  const auto cfg2 = write_config(w, "violation_norm.json", norm_cfg);
  CHECK(run("violation-search --config " + cfg2.string() + " --out " +
            (w.dir / "norm").string()) == 1);
}

TEST_CASE("gamma-check passes for a diagonal twist") {
  Workdir w;
  Json config{{"algebra", {{"kind", "antisymmetric"}, {"generators", 3}, {"truncation", 4}}},
              {"norm",
               {{"w_family", "factorial_inv"},
                {"gamma_diag", {2.0, 3.0, 5.0}},
                {"gamma_exponent", 1.0}}},
              {"params", {{"pairs", 100}}}};
  const auto cfg = write_config(w, "gamma.json", config);
  CHECK(run("gamma-check --config " + cfg.string() + " --out " + (w.dir / "out").string()) ==
        0);
  const Json report = Json::parse(slurp(w.dir / "out" / "gamma-check.report.json"));
  CHECK(report["result"]["max_residual"].get<double>() <= 1e-10);
  CHECK(report["result"]["contraction_bound"]["ok"] == true);
}

TEST_CASE("witness: nilpotent variant pins lambda* = 1/sqrt(2)") {
  Workdir w;
  Json config = grassmann_config(2, 2);
  config["params"] = Json{{"variant", "nilpotent"}, {"f_generator", 1}};
  const auto cfg = write_config(w, "nilpotent.json", config);
  CHECK(run("witness --config " + cfg.string() + " --out " + (w.dir / "out").string()) == 0);
  const Json report = Json::parse(slurp(w.dir / "out" / "witness.report.json"));
  CHECK(std::abs(report["result"]["lambda_star"].get<double>() - 0.7071067811865476) < 1e-7);
}

TEST_CASE("witness: complex paired algebra found by phase rotation") {
  Workdir w;
  Json config{{"algebra",
               {{"kind", "paired"},
                {"generators", 2},
                {"truncation", 2},
                {"chi", 0},
                {"field", "complex"},
                {"omega", {{-1, 0}, {0, -1}}}}},
              {"norm", {{"w_family", "factorial_inv"}}}};
  const auto cfg = write_config(w, "complex.json", config);
  CHECK(run("witness --config " + cfg.string() + " --out " + (w.dir / "out").string()) == 0);
  const Json report = Json::parse(slurp(w.dir / "out" / "witness.report.json"));
  // after rotation omega(f,f) = 1 and f^2 = e0 - M_(1,1): c1 = 1, c2 = 3/2,
  // so the quartic maximum is 15/7
  CHECK(std::abs(report["result"]["ratio"].get<double>() - std::sqrt(15.0 / 7.0)) < 1e-9);
  // the same pairing over R is negative definite: no witness, exit 1
  Json real_cfg = config;
  real_cfg["algebra"]["field"] = "real";
  const auto cfg2 = write_config(w, "real.json", real_cfg);
  CHECK(run("witness --config " + cfg2.string() + " --out " + (w.dir / "r").string()) == 1);
}

TEST_CASE("config validation failures exit with code 2") {
  Workdir w;
  SUBCASE("unknown key") {
    Json config = grassmann_config(2, 2);
    config["algebra"]["surprise"] = 1;
    const auto cfg = write_config(w, "bad.json", config);
    CHECK(run("witness --config " + cfg.string()) == 2);
  }
  SUBCASE("missing config file") { CHECK(run("witness --config /nonexistent.json") == 2); }
  SUBCASE("missing required param") {
    Json config = grassmann_config(2, 2);
    const auto cfg = write_config(w, "nosamples.json", config);
    CHECK(run("sample-ratios --config " + cfg.string()) == 2);
  }
  SUBCASE("malformed json") {
    const fs::path p = w.dir / "broken.json";
    std::ofstream(p) << "{ not json";
    CHECK(run("witness --config " + p.string()) == 2);
  }
  SUBCASE("gamma twist below the eigenvalue floor") {
    Json config = grassmann_config(3, 3);
    config["norm"]["gamma_diag"] = {1.0, 2.0, 3.0};
    const auto cfg = write_config(w, "lowgamma.json", config);
    CHECK(run("witness --config " + cfg.string()) == 2);
  }
}

TEST_CASE("cli overrides take precedence over the file") {
  Workdir w;
  Json config = grassmann_config(4, 4);
  config["params"] = Json{{"samples", 50}, {"seed", 1}};
  const auto cfg = write_config(w, "override.json", config);
  const std::string out = (w.dir / "out").string();
  CHECK(run("sample-ratios --config " + cfg.string() + " --seed 9 --params.samples=80 --out " +
            out) == 0);
  const Json report = Json::parse(slurp(fs::path(out) / "sample-ratios.report.json"));
  CHECK(report["config"]["params"]["seed"] == 9);
  CHECK(report["config"]["params"]["samples"] == 80);
  CHECK(report["result"]["count"] == 80);
}
