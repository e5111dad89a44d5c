#include "gradenorm/suite.hpp"

#include <chrono>
#include <cstdio>

#include "gradenorm/oracles.hpp"
#include "gradenorm/rational.hpp"

namespace gradenorm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class S>
SpecPtr<S> class1_spec(Kind kind, int d, int n, int even = 0) {
  AlgebraSpec<S> spec;
  spec.kind = kind;
  spec.generators = d;
  spec.truncation = n;
  spec.even_count = even;
  return make_spec(std::move(spec));
}

template <class S>
SpecPtr<S> paired_spec(int d, int n, int chi, std::vector<S> omega) {
  AlgebraSpec<S> spec;
  spec.kind = Kind::Paired;
  spec.generators = d;
  spec.truncation = n;
  spec.chi = chi;
  spec.pairing = std::move(omega);
  return make_spec(std::move(spec));
}

template <class S>
Element<S> random_integer_element(const SpecPtr<S>& spec, int max_degree, TrialRng& rng) {
  Element<S> a(spec);
  const AlgebraShape shape = spec->shape();
  for (int n = 0; n <= max_degree; ++n)
    for (const auto& m : degree_basis(shape, n)) a.add_term(m, S(rng.uniform_int(-3, 3)));
  return a;
}

template <class S>
double associativity_residual(const Element<S>& a, const Element<S>& b, const Element<S>& c) {
  Element<S> left = product(product(a, b), c);
  Element<S> right = product(a, product(b, c));
  const double num = l2_distance(left, right);
  const double den = std::max(l2_norm(left), l2_norm(right));
  return den == 0.0 ? num : num / den;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult criterion1_witness_floor() {
  CriterionResult r{1, "no-go floor: witness ratio >= sqrt(4/3)", true, "", 0};
  const auto t0 = Clock::now();

  const std::vector<std::pair<std::string, SpecPtr<double>>> specs = {
      {"tensor", class1_spec<double>(Kind::Tensor, 2, 2)},
      {"symmetric", class1_spec<double>(Kind::Symmetric, 2, 2)},
      {"antisymmetric", class1_spec<double>(Kind::Antisymmetric, 2, 2)},
      {"super", class1_spec<double>(Kind::Super, 2, 2, 1)},
  };
  TrialRng wrng(0xACCE55ULL, 7);
  const auto rand_weight = [&] { return 0.25 + 3.75 * wrng.uniform01(); };
  const std::vector<std::pair<std::string, WeightSpec>> families = {
      {"factorial_inv", WeightSpec::factorial_inv()},
      {"factorial_inv_shift", WeightSpec::factorial_inv_shift()},
      {"sigma_rho_s(-1,0,0)", WeightSpec::sigma_rho_s(-1, 0, 0)},
      {"explicit_random", WeightSpec::explicit_list({1.0, rand_weight(), rand_weight()})},
  };

  double min_ratio = 1e300;
  double worst_nilpotent_ratio_err = 0.0;
  double worst_nilpotent_lambda_err = 0.0;
  double max_config_seconds = 0.0;
  for (const auto& [spec_name, spec] : specs) {
    for (const auto& [family_name, weights] : families) {
      const NormSpec<double> ns{weights, Gram::Normalized, std::nullopt};
      const auto c0 = Clock::now();
      const auto report = witness_sweep(spec, ns, monomial(spec, {1}));
      max_config_seconds = std::max(max_config_seconds, seconds_since(c0));
      min_ratio = std::min(min_ratio, report.ratio);
      if (report.ratio < kSqrt43 - 1e-9) r.pass = false;
      const double rel =
          std::abs(report.ratio - report.closed_form_ratio) / report.closed_form_ratio;
      if (rel > 1e-9) r.pass = false;

      // Nilpotent directions: exactly sqrt(4/3) at lambda* = 1/sqrt(2).
      Element<double> nil(spec);
      if (spec->kind == Kind::Antisymmetric) nil = monomial(spec, {1});
      if (spec->kind == Kind::Super) nil = monomial(spec, {2});
      if (!nil.is_zero()) {
        const auto c1 = Clock::now();
        const auto nw = nilpotent_witness(spec, ns, nil);
        max_config_seconds = std::max(max_config_seconds, seconds_since(c1));
        worst_nilpotent_ratio_err =
            std::max(worst_nilpotent_ratio_err, std::abs(nw.ratio - kSqrt43));
        worst_nilpotent_lambda_err = std::max(
            worst_nilpotent_lambda_err, std::abs(nw.lambda_star - 0.7071067811865476));
      }
    }
  }
  if (worst_nilpotent_ratio_err > 1e-9 || worst_nilpotent_lambda_err > 1e-9) r.pass = false;
  if (max_config_seconds >= 1.0) r.pass = false;
  r.seconds = seconds_since(t0);
  r.detail = "min ratio " + fmt(min_ratio) + " (floor " + fmt(kSqrt43) +
             "), nilpotent |ratio-sqrt(4/3)| <= " + fmt(worst_nilpotent_ratio_err) +
             ", |lambda*-1/sqrt(2)| <= " + fmt(worst_nilpotent_lambda_err) +
             ", slowest config " + fmt(max_config_seconds) + " s";
  return r;
}

// ---------------------------------------------------------------- criterion 2

CriterionResult criterion2_sqrt3_sampling(int threads) {
  CriterionResult r{2, "sqrt(3) ceiling: 10^4 sampled ratios", true, "", 0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (Kind kind : {Kind::Antisymmetric, Kind::Symmetric}) {
    const auto spec = class1_spec<double>(kind, 6, 6);
    int config = 0;
    for (const auto& weights :
         {WeightSpec::factorial_inv(), WeightSpec::factorial_inv_shift()}) {
      const NormSpec<double> ns{weights, Gram::Normalized, std::nullopt};
      const auto rep = ratio_sample(spec, ns, ns, ns, 10000,
                                    20260801ULL + static_cast<std::uint64_t>(config++),
                                    threads);
      worst = std::max(worst, rep.max_ratio);
    }
  }
  r.seconds = seconds_since(t0);
  r.pass = worst <= kSqrt3 + 1e-9 && r.seconds < 60.0;
  r.detail = "max sampled ratio " + fmt(worst) + " vs sqrt(3) = " + fmt(kSqrt3);
  return r;
}

// ---------------------------------------------------------------- criterion 3

CriterionResult criterion3_delta_audits() {
  CriterionResult r{3, "delta audits at P = 50", true, "", 0};
  const auto t0 = Clock::now();
  const int P = 50;

  const auto shift = delta_audit(WeightSpec::factorial_inv_shift(),
                                 WeightSpec::factorial_inv_shift(),
                                 WeightSpec::factorial_inv_shift(), P);
  if (std::abs(shift.delta_min - 1.0) > 1e-12 || shift.argmax_p != 1 || shift.argmax_q != 1)
    r.pass = false;

  const auto inv = delta_audit(WeightSpec::factorial_inv(), WeightSpec::factorial_inv(),
                               WeightSpec::factorial_inv(), P);
  const double expected = static_cast<double>(P) / (P + 1);
  if (std::abs(inv.delta_min - expected) > 1e-12 || inv.argmax_p != 1 || inv.argmax_q != P)
    r.pass = false;

  const auto flat =
      delta_audit(WeightSpec::flat(), WeightSpec::flat(), WeightSpec::flat(), P);
  if (flat.delta_min != static_cast<double>(2 * P - 1) || flat.argmax_p != P ||
      flat.argmax_q != P)
    r.pass = false;

  r.seconds = seconds_since(t0);
  if (r.seconds >= 1.0) r.pass = false;
  r.detail = "1/(n-1)!: " + fmt(shift.delta_min) + " at (" + std::to_string(shift.argmax_p) +
             "," + std::to_string(shift.argmax_q) + "); 1/n!: " + fmt(inv.delta_min) +
             " at (" + std::to_string(inv.argmax_p) + "," + std::to_string(inv.argmax_q) +
             "); flat: " + fmt(flat.delta_min);
  return r;
}

// ---------------------------------------------------------------- criterion 4

CriterionResult criterion4_best_constant_sandwich() {
  CriterionResult r{4, "best-constant sandwich and SVD oracle", true, "", 0};
  const auto t0 = Clock::now();
  const NormSpec<double> ns{WeightSpec::factorial_inv(), Gram::Normalized, std::nullopt};
  std::string parts;
  for (int d : {2, 3, 4}) {
    const auto spec = class1_spec<double>(Kind::Antisymmetric, d, d);
    const auto rep = best_constant(spec, ns, ns, ns, d);
    if (!rep.converged) r.pass = false;
    if (rep.gamma_best < kSqrt43 - 1e-6 || rep.gamma_best > kSqrt3 + 1e-6) r.pass = false;
    double oracle_gap = 0.0;
    if (d <= 3) {
      const double oracle = dense_svd_best_constant(spec, ns, ns, ns, d);
      oracle_gap = std::abs(rep.gamma_best - oracle);
      if (oracle_gap > 1e-8) r.pass = false;
    }
    if (!parts.empty()) parts += "; ";
    parts += "d=" + std::to_string(d) + ": " + fmt(rep.gamma_best);
    if (d <= 3) parts += " (svd gap " + fmt(oracle_gap) + ")";
  }
  r.seconds = seconds_since(t0);
  if (r.seconds >= 120.0) r.pass = false;
  r.detail = parts;
  return r;
}

// ---------------------------------------------------------------- criterion 5

CriterionResult criterion5_standard_violation() {
  CriterionResult r{5, "standard-norm violation witnesses", true, "", 0};
  const auto t0 = Clock::now();

  const auto grass = class1_spec<double>(Kind::Antisymmetric, 6, 6);
  const auto gw = violation_search(grass, Gram::Standard);
  const double expect_grass = 2.0 / std::sqrt(3.0);
  if (!gw.found || std::abs(gw.ratio - expect_grass) > 1e-12) r.pass = false;
  Element<double> blades(grass);
  blades.add_term(Monomial{{1, 2}}, 1.0);
  blades.add_term(Monomial{{3, 4}}, 1.0);
  blades.add_term(Monomial{{5, 6}}, 1.0);
  if (!(gw.a == blades && gw.b == blades)) r.pass = false;

  const auto sym = class1_spec<double>(Kind::Symmetric, 1, 2);
  const auto sw = violation_search(sym, Gram::Standard);
  if (!sw.found || std::abs(sw.ratio - std::sqrt(2.0)) > 1e-12) r.pass = false;

  r.seconds = seconds_since(t0);
  r.detail = "grassmann d=6 ratio " + fmt(gw.ratio) + " (target 2/sqrt(3) = " +
             fmt(expect_grass) + "), symmetric d=1 ratio " + fmt(sw.ratio) +
             " (target sqrt(2))";
  return r;
}

// ---------------------------------------------------------------- criterion 6

CriterionResult criterion6_gamma_laws(int threads) {
  CriterionResult r{6, "Gamma(A) multiplicativity and twisted sqrt(3) bound", true, "", 0};
  const auto t0 = Clock::now();

  // Multiplicativity residual on 10^3 random pairs, A = diag(2,3,5), d=3, N=4.
  const auto gamma = GammaOperator<double>::diagonal({2.0, 3.0, 5.0});
  double max_residual = 0.0;
  for (Kind kind : {Kind::Symmetric, Kind::Antisymmetric}) {
    const auto spec = class1_spec<double>(kind, 3, 4);
    for (int trial = 0; trial < 500; ++trial) {
      TrialRng rng(0x6A44AULL, static_cast<std::uint64_t>(trial) * 2 +
                                   (kind == Kind::Symmetric ? 0 : 1));
      const auto a = random_integer_element(spec, 2, rng);
      const auto b = random_integer_element(spec, 2, rng);
      max_residual = std::max(max_residual, multiplicativity_residual(gamma, a, b));
    }
  }
  if (max_residual > 1e-10) r.pass = false;

  // Exact-rational route: the residual vanishes identically.
  bool rational_zero = true;
  {
    const auto spec = class1_spec<Rational>(Kind::Antisymmetric, 3, 3);
    const auto grat =
        GammaOperator<Rational>::diagonal({Rational(2), Rational(3), Rational(5)});
    for (int trial = 0; trial < 100; ++trial) {
      TrialRng rng(0x6A44BULL, static_cast<std::uint64_t>(trial));
      const auto a = random_integer_element(spec, 1, rng);
      const auto b = random_integer_element(spec, 1, rng);
      if (multiplicativity_residual(grat, a, b) != 0.0) rational_zero = false;
    }
  }
  if (!rational_zero) r.pass = false;

  // Twisted norms (A >= 2 id) keep the sqrt(3) sampling bound of criterion 2.
  double worst_twisted = 0.0;
  {
    GammaTwist<double> twist{
        GammaOperator<double>::diagonal({2.0, 2.5, 3.0, 3.5, 4.0, 4.5}), 0.5};
    for (Kind kind : {Kind::Antisymmetric, Kind::Symmetric}) {
      const auto spec = class1_spec<double>(kind, 6, 6);
      int config = 0;
      for (const auto& weights :
           {WeightSpec::factorial_inv(), WeightSpec::factorial_inv_shift()}) {
        NormSpec<double> ns{weights, Gram::Normalized, twist};
        const auto rep = ratio_sample(spec, ns, ns, ns, 10000,
                                      20260802ULL + static_cast<std::uint64_t>(config++),
                                      threads);
        worst_twisted = std::max(worst_twisted, rep.max_ratio);
      }
    }
  }
  if (worst_twisted > kSqrt3 + 1e-9) r.pass = false;

  r.seconds = seconds_since(t0);
  r.detail = "max residual " + fmt(max_residual) + " (rational route exact: " +
             (rational_zero ? "yes" : "no") + "), max twisted sampled ratio " +
             fmt(worst_twisted);
  return r;
}

// ---------------------------------------------------------------- criterion 7

CriterionResult criterion7_algebra_correctness() {
  CriterionResult r{7, "algebra property suites and permanent oracle", true, "", 0};
  const auto t0 = Clock::now();

  std::vector<std::pair<std::string, SpecPtr<double>>> specs = {
      {"tensor", class1_spec<double>(Kind::Tensor, 2, 6)},
      {"symmetric", class1_spec<double>(Kind::Symmetric, 3, 6)},
      {"antisymmetric", class1_spec<double>(Kind::Antisymmetric, 4, 6)},
      {"super", class1_spec<double>(Kind::Super, 4, 6, 2)},
      {"clifford", paired_spec<double>(3, 6, 1,
                                       {1, 0, 0, 0, 1, 0, 0, 0, 1})},
      {"sym_wiener", paired_spec<double>(3, 6, 0,
                                         {2, 1, 0, 1, 3, -1, 0, -1, 1})},
      {"antisym_wiener", paired_spec<double>(3, 6, 1,
                                             {0, 2, -1, -2, 0, 3, 1, -3, 0})},
  };
  double max_assoc = 0.0;
  std::uint64_t stream = 0;
  for (const auto& [name, spec] : specs) {
    for (int trial = 0; trial < 1000; ++trial) {
      TrialRng rng(0xA550CULL, stream++);
      const auto a = random_integer_element(spec, 2, rng);
      const auto b = random_integer_element(spec, 2, rng);
      const auto c = random_integer_element(spec, 2, rng);
      max_assoc = std::max(max_assoc, associativity_residual(a, b, c));
    }
  }
  if (max_assoc > 1e-10) r.pass = false;

  // Graded commutativity on parity-homogeneous slices (class-1 kinds).
  double max_comm = 0.0;
  for (const auto& [name, spec] :
       {specs[1], specs[2], specs[3]}) {  // symmetric, antisymmetric, super
    const AlgebraShape shape = spec->shape();
    for (int trial = 0; trial < 1000; ++trial) {
      TrialRng rng(0xC0117ULL, stream++);
      const int p = rng.uniform_int(0, 3);
      const int q = rng.uniform_int(0, 3);
      const int pa = rng.uniform_int(0, 1);
      const int pb = rng.uniform_int(0, 1);
      Element<double> a(spec), b(spec);
      for (const auto& m : degree_basis(shape, p))
        if (word_parity(shape, m) == pa) a.add_term(m, rng.normal());
      for (const auto& m : degree_basis(shape, q))
        if (word_parity(shape, m) == pb) b.add_term(m, rng.normal());
      if (a.is_zero() || b.is_zero()) continue;
      const double s =
          (spec->chi == 1 && (word_parity(shape, a.terms().begin()->first) *
                              word_parity(shape, b.terms().begin()->first)) % 2 == 1)
              ? -1.0
              : 1.0;
      Element<double> lhs = mul(a, b);
      Element<double> rhs = s * mul(b, a);
      const double num = l2_distance(lhs, rhs);
      const double den = std::max(l2_norm(lhs), l2_norm(rhs));
      max_comm = std::max(max_comm, den == 0.0 ? num : num / den);
    }
  }
  if (max_comm > 1e-10) r.pass = false;

  // Paired generator relation: e_i o e_j - class-1 part = omega(i,j) e0.
  bool relation_ok = true;
  for (std::size_t si = 4; si < specs.size(); ++si) {
    const auto& spec = specs[si].second;
    const AlgebraShape shape = spec->shape();
    for (int i = 1; i <= spec->generators && relation_ok; ++i)
      for (int j = 1; j <= spec->generators && relation_ok; ++j) {
        Element<double> ei(spec), ej(spec);
        ei.add_term(Monomial{{i}}, 1.0);
        ej.add_term(Monomial{{j}}, 1.0);
        Element<double> prod = mul_twisted(ei, ej);
        Element<double> expected(spec);
        CanonicalWord cw = canonicalize_word(shape, {i, j});
        if (cw.sign != 0) expected.add_term(Monomial{cw.word}, static_cast<double>(cw.sign));
        expected.add_term(Monomial{}, spec->omega(i, j));
        if (l2_distance(prod, expected) > 1e-14) relation_ok = false;
      }
  }
  if (!relation_ok) r.pass = false;

  // Exact-rational associativity, d <= 3, N <= 3: zero residual.
  bool rational_exact = true;
  {
    std::vector<SpecPtr<Rational>> rspecs = {
        class1_spec<Rational>(Kind::Tensor, 2, 3),
        class1_spec<Rational>(Kind::Symmetric, 3, 3),
        class1_spec<Rational>(Kind::Antisymmetric, 3, 3),
        class1_spec<Rational>(Kind::Super, 3, 3, 1),
        paired_spec<Rational>(3, 3, 1,
                              {Rational(1), Rational(0), Rational(0), Rational(0), Rational(1),
                               Rational(0), Rational(0), Rational(0), Rational(1)}),
        paired_spec<Rational>(3, 3, 0,
                              {Rational(2), Rational(1), Rational(0), Rational(1), Rational(3),
                               Rational(-1), Rational(0), Rational(-1), Rational(1)}),
    };
    for (const auto& spec : rspecs) {
      for (int trial = 0; trial < 200; ++trial) {
        TrialRng rng(0xEAAC7ULL, stream++);
        const auto a = random_integer_element(spec, 1, rng);
        const auto b = random_integer_element(spec, 1, rng);
        const auto c = random_integer_element(spec, 1, rng);
        if (associativity_residual(a, b, c) != 0.0) rational_exact = false;
      }
    }
  }
  if (!rational_exact) r.pass = false;

  // Ryser permanent equals the naive expansion for integer matrices, n <= 7.
  bool permanent_ok = true;
  for (int n = 1; n <= 7 && permanent_ok; ++n) {
    for (int rep = 0; rep < 10 && permanent_ok; ++rep) {
      TrialRng rng(0x9E4ACULL, static_cast<std::uint64_t>(n) * 100 + rep);
      std::vector<std::vector<double>> m(n, std::vector<double>(n));
      for (auto& row : m)
        for (auto& v : row) v = rng.uniform_int(-3, 3);
      if (permanent(m) != naive_permanent(m)) permanent_ok = false;
    }
  }
  if (!permanent_ok) r.pass = false;

  r.seconds = seconds_since(t0);
  r.detail = "max associativity residual " + fmt(max_assoc) + ", max commutativity residual " +
             fmt(max_comm) + ", generator relation " + (relation_ok ? "ok" : "FAIL") +
             ", rational exact " + (rational_exact ? "yes" : "no") + ", permanent oracle " +
             (permanent_ok ? "ok" : "FAIL");
  return r;
}

// ---------------------------------------------------------------- criterion 8

CriterionResult criterion8_cross_parameter(int threads) {
  CriterionResult r{8, "cross-parameter estimates on the (sigma,rho,s) grid", true, "", 0};
  const auto t0 = Clock::now();

  const auto spec = class1_spec<double>(Kind::Antisymmetric, 4, 4);
  const int P = 4;
  struct Triple {
    double sigma, rho, s;
  };
  std::vector<Triple> grid;
  for (double sigma : {-1.0, -2.0})
    for (double rho : {-1.0, 0.0, 1.0})
      for (double s : {-1.0, 0.0}) grid.push_back({sigma, rho, s});

  double worst_margin = -1e300;  // max over runs of (max_ratio - bound)
  int runs = 0;
  std::uint64_t seed = 0x0C8055ULL;
  auto check = [&](const Triple& prod, const Triple& fact) {
    const WeightSpec wp = WeightSpec::sigma_rho_s(prod.sigma, prod.rho, prod.s);
    const WeightSpec wf = WeightSpec::sigma_rho_s(fact.sigma, fact.rho, fact.s);
    const auto audit = delta_audit(wf, wf, wp, P);
    const double bound = kSqrt3 * std::max(1.0, audit.delta_min) + 1e-9;
    const NormSpec<double> np{wp, Gram::Normalized, std::nullopt};
    const NormSpec<double> nf{wf, Gram::Normalized, std::nullopt};
    const auto rep = ratio_sample(spec, nf, nf, np, 1500, seed++, threads);
    worst_margin = std::max(worst_margin, rep.max_ratio - bound);
    if (rep.max_ratio > bound) r.pass = false;
    ++runs;
  };

  for (const auto& t : grid) {
    // Identical triples, admissible when sigma = -1 with s <= 0, or sigma < -1.
    if ((t.sigma == -1.0 && t.s <= 0.0) || t.sigma < -1.0) check(t, t);
  }
  for (const auto& tp : grid)
    for (const auto& tf : grid) {
      if (tp.sigma < tf.sigma) check(tp, tf);                        // (n.11a)
      else if (tp.sigma == tf.sigma && tp.rho < tf.rho) check(tp, tf);  // (n.11b)
    }

  r.seconds = seconds_since(t0);
  r.detail = std::to_string(runs) + " admissible runs, worst margin to bound " +
             fmt(worst_margin) + " (negative = within bound)";
  return r;
}

}  // namespace

SuiteReport run_acceptance_suite(int threads) {
  SuiteReport report;
  report.criteria.push_back(criterion1_witness_floor());
  report.criteria.push_back(criterion2_sqrt3_sampling(threads));
  report.criteria.push_back(criterion3_delta_audits());
  report.criteria.push_back(criterion4_best_constant_sandwich());
  report.criteria.push_back(criterion5_standard_violation());
  report.criteria.push_back(criterion6_gamma_laws(threads));
  report.criteria.push_back(criterion7_algebra_correctness());
  report.criteria.push_back(criterion8_cross_parameter(threads));
  return report;
}

Json suite_to_json(const SuiteReport& report) {
  Json criteria = Json::array();
  for (const auto& c : report.criteria)
    criteria.push_back(Json{{"id", c.id},
                            {"name", c.name},
                            {"pass", c.pass},
                            {"detail", c.detail},
                            {"seconds", c.seconds}});
  return Json{{"criteria", std::move(criteria)}, {"all_pass", report.all_pass()}};
}

}  // namespace gradenorm
