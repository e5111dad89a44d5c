#pragma once

#include <algorithm>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "gradenorm/norms.hpp"
#include "gradenorm/rng.hpp"

namespace gradenorm {

inline constexpr double kSqrt3 = 1.7320508075688772935;
inline constexpr double kSqrt43 = 1.1547005383792515290;  // sqrt(4/3) = 2/sqrt(3)

/// Inner-product model the witness constructions run against: by default the
/// graded NormSpec inner product, but any positive sesquilinear form can be
/// installed (nilpotent_witness uses this to exercise norms where the unit
/// is not orthogonal to the nilpotent direction).
template <class S>
struct InnerProduct {
  std::function<S(const Element<S>&, const Element<S>&)> ip;

  S operator()(const Element<S>& a, const Element<S>& b) const { return ip(a, b); }

  double norm(const Element<S>& x) const {
    return std::sqrt(std::max(
        0.0, ScalarTraits<S>::to_double(ScalarTraits<S>::real(ip(x, x)))));
  }

  static InnerProduct from_norm_spec(NormSpec<S> ns) {
    return InnerProduct{[ns = std::move(ns)](const Element<S>& a, const Element<S>& b) {
      return inner(a, b, ns);
    }};
  }
};

/// An explicit pair (a, b) with the ratio ||a o b|| / (||a|| ||b||) it
/// achieves and the closed-form value predicted by the construction.
template <class S>
struct WitnessReport {
  Element<S> a, b;
  double lambda_star = 0.0;
  double ratio = 0.0;
  double closed_form_ratio = 0.0;
  bool found = true;
  std::string note;
};

namespace detail {

template <class S>
double measured_ratio(const InnerProduct<S>& ip, const Element<S>& a) {
  const double na = ip.norm(a);
  const double np = ip.norm(product(a, a));
  return na == 0.0 ? 0.0 : np / (na * na);
}

// Golden-section refinement of a unimodal-ish 1d objective on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         int iters = 90) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-13 * (1.0 + b); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace detail

/// No-go witness construction: with f normalized and the hypotheses
/// (e0|f) = (f|f^2) = 0, (e0|f^2) >= 0 verified, the pair a = b = e0 + l f
/// satisfies ratio(l)^2 = (1 + (4 + 2 c1) l^2 + c2 l^4) / (1 + l^2)^2 with
/// c1 = (e0|f^2), c2 = ||f^2||^2.  The sweep maximizes over l >= 0 using the
/// analytic stationary point plus a grid/golden-section pass on the measured
/// ratio, and guarantees ratio >= sqrt(4/3) - 1e-9.
template <class S>
WitnessReport<S> witness_sweep(const SpecPtr<S>& spec, const InnerProduct<S>& ip,
                                Element<S> f) {
  constexpr double kHypTol = 1e-12;
  const Element<S> e0 = unit(spec);

  const double fn = ip.norm(f);
  if (!(fn > 0.0)) throw std::invalid_argument("witness_sweep: f must be nonzero");
  f *= S(1.0 / fn);

  Element<S> f2 = product(f, f);
  if (f2.truncated())
    throw std::invalid_argument(
        "witness_sweep: truncation too small to represent f^2 (need N >= 2)");

  const S ef = ip(e0, f);
  if (std::sqrt(ScalarTraits<S>::abs_sq(ef)) > kHypTol)
    throw std::invalid_argument("witness_sweep: hypothesis (e0|f) = 0 violated");
  const S ff2 = ip(f, f2);
  if (std::sqrt(ScalarTraits<S>::abs_sq(ff2)) > kHypTol)
    throw std::invalid_argument("witness_sweep: hypothesis (f|f^2) = 0 violated");
  const S ef2 = ip(e0, f2);
  if (std::abs(ScalarTraits<S>::to_double(ScalarTraits<S>::imag(ef2))) > kHypTol)
    throw std::invalid_argument("witness_sweep: (e0|f^2) must be real");
  double c1 = ScalarTraits<S>::to_double(ScalarTraits<S>::real(ef2));
  if (c1 < -kHypTol)
    throw std::invalid_argument("witness_sweep: hypothesis (e0|f^2) >= 0 violated");
  c1 = std::max(c1, 0.0);
  const double nf2 = ip.norm(f2);
  const double c2 = nf2 * nf2;

  const double B = 4.0 + 2.0 * c1;
  const double C = c2;
  auto closed_sq = [&](double lam) {
    const double t = lam * lam;
    return (1.0 + B * t + C * t * t) / ((1.0 + t) * (1.0 + t));
  };
  auto measured = [&](double lam) {
    Element<S> a = e0 + S(lam) * f;
    return detail::measured_ratio(ip, a);
  };

  double lam_best = 0.0, val_best = measured(0.0);
  auto consider = [&](double lam) {
    if (!(lam >= 0.0) || !std::isfinite(lam)) return;
    const double v = measured(lam);
    if (v > val_best) {
      val_best = v;
      lam_best = lam;
    }
  };

  if (B > 2.0 * C) consider(std::sqrt((B - 2.0) / (B - 2.0 * C)));
  double hi = std::max(4.0, 4.0 * lam_best);
  for (int i = 1; i <= 64; ++i) consider(hi * i / 64.0);
  const double lo = std::max(0.0, lam_best - hi / 64.0);
  consider(detail::golden_max(measured, lo, std::min(hi, lam_best + hi / 64.0)));

  WitnessReport<S> report;
  report.a = e0 + S(lam_best) * f;
  report.b = report.a;
  report.lambda_star = lam_best;
  report.ratio = val_best;
  report.closed_form_ratio = std::sqrt(closed_sq(lam_best));
  if (report.ratio < kSqrt43 - 1e-9)
    throw std::runtime_error("witness_sweep: ratio fell below the guaranteed sqrt(4/3) floor");
  return report;
}

template <class S>
WitnessReport<S> witness_sweep(const SpecPtr<S>& spec, const NormSpec<S>& ns, Element<S> f) {
  return witness_sweep(spec, InnerProduct<S>::from_norm_spec(ns), std::move(f));
}

/// Nilpotent-element witness: for f with f^2 = 0 and ||f|| = 1, either
/// delegates to the sweep (when Re(e0|f) = 0) or takes l = -2 Re(e0|f),
/// which makes ||a|| = 1 and ratio^2 = 1 + 8 Re(e0|f)^2 > 1.
template <class S>
WitnessReport<S> nilpotent_witness(const SpecPtr<S>& spec, const InnerProduct<S>& ip,
                                   Element<S> f) {
  const Element<S> f2 = product(f, f);
  if (f2.truncated())
    throw std::invalid_argument("nilpotent_witness: cannot verify f^2 = 0 within truncation");
  if (!f2.is_zero())
    throw std::invalid_argument("nilpotent_witness: f is not nilpotent (f^2 != 0)");
  const double fn = ip.norm(f);
  if (!(fn > 0.0)) throw std::invalid_argument("nilpotent_witness: f must be nonzero");
  f *= S(1.0 / fn);

  const Element<S> e0 = unit(spec);
  const double gamma = ScalarTraits<S>::to_double(ScalarTraits<S>::real(ip(e0, f)));
  if (std::abs(gamma) <= 1e-12) return witness_sweep(spec, ip, std::move(f));

  const double lam = -2.0 * gamma;
  WitnessReport<S> report;
  report.a = e0 + S(lam) * f;
  report.b = report.a;
  report.lambda_star = lam;
  report.ratio = detail::measured_ratio(ip, report.a);
  report.closed_form_ratio = std::sqrt(1.0 + 8.0 * gamma * gamma);
  report.note = "unit not orthogonal to f: Re(e0|f) = " + std::to_string(gamma);
  return report;
}

template <class S>
WitnessReport<S> nilpotent_witness(const SpecPtr<S>& spec, const NormSpec<S>& ns,
                                   Element<S> f) {
  return nilpotent_witness(spec, InnerProduct<S>::from_norm_spec(ns), std::move(f));
}

/// Grid audit of the weight inequality
///   (p+q-1) w_{p+q}(rho) <= delta * w_p(sigma) * w_q(tau),  1 <= p, q <= P.
/// delta_min is the smallest admissible delta (the grid maximum of the
/// ratio); argmax ties break toward smallest p+q, then smallest p.
struct AuditReport {
  int grid_bound = 0;
  double delta_min = 0.0;
  int argmax_p = 0;
  int argmax_q = 0;
  double target_gamma = kSqrt3;
  double tolerance = 1e-9;
  bool pass = false;  // sqrt(3) * max(1, delta_min) <= target_gamma + tolerance
};

AuditReport delta_audit(const WeightSpec& w_sigma, const WeightSpec& w_tau,
                        const WeightSpec& w_rho, int grid_bound,
                        double target_gamma = kSqrt3, double tolerance = 1e-9);

struct RatioRow {
  int trial = 0;
  int degree_a = 0;
  int degree_b = 0;
  double ratio = 0.0;
};

struct RatioReport {
  std::uint64_t seed = 0;
  int count = 0;
  double max_ratio = 0.0;
  int argmax_trial = -1;
  int argmax_degree_a = 0;
  int argmax_degree_b = 0;
  double q50 = 0.0, q90 = 0.0, q99 = 0.0;
  std::vector<RatioRow> rows;
};

namespace detail {

// Coefficient scales that make independent standard normals per monomial
// isotropic for the given norm: 1/sqrt(w_eff * gram * twist^2).  Twisted
// norms keep a diagonal fast path; a dense twist falls back to untwisted
// isotropy (still a valid sampler, just differently weighted).
template <class S>
struct SampleBasis {
  std::vector<std::vector<Monomial>> basis;        // per degree 0..N
  std::vector<std::vector<double>> scale_sigma;    // matching shape
  std::vector<std::vector<double>> scale_tau;

  static double monomial_scale(const AlgebraShape& shape, const NormSpec<S>& ns,
                               const Monomial& m) {
    double g = ns.effective_weight(m.degree()) * gram_diag(shape, m, ns.gram);
    if (ns.twist && ns.twist->op.is_diagonal()) {
      double t = 1.0;
      for (int letter : m.word)
        t *= std::pow(ScalarTraits<S>::to_double(
                          ns.twist->op.raw()[static_cast<std::size_t>(letter - 1)]),
                      ns.twist->exponent);
      g *= t * t;
    }
    return 1.0 / std::sqrt(g);
  }

  SampleBasis(const SpecPtr<S>& spec, const NormSpec<S>& ns_sigma,
              const NormSpec<S>& ns_tau) {
    const AlgebraShape shape = spec->shape();
    const int top = spec->truncation;
    basis.resize(top + 1);
    scale_sigma.resize(top + 1);
    scale_tau.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      basis[n] = degree_basis(shape, n);
      scale_sigma[n].reserve(basis[n].size());
      scale_tau[n].reserve(basis[n].size());
      for (const auto& m : basis[n]) {
        scale_sigma[n].push_back(monomial_scale(shape, ns_sigma, m));
        scale_tau[n].push_back(monomial_scale(shape, ns_tau, m));
      }
    }
  }

  Element<S> draw(const SpecPtr<S>& spec, const std::vector<std::vector<double>>& scales,
                  int max_degree, TrialRng& rng) const {
    Element<S> a(spec);
    for (int n = 0; n <= max_degree; ++n) {
      for (std::size_t i = 0; i < basis[n].size(); ++i) {
        S z;
        if constexpr (ScalarTraits<S>::is_complex) {
          const double re = rng.normal();
          const double im = rng.normal();
          z = S(re * 0.7071067811865476, im * 0.7071067811865476);
        } else {
          z = S(rng.normal());
        }
        a.add_term(basis[n][i], z * S(scales[n][i]));
      }
    }
    return a;
  }
};

inline void parallel_for(int begin, int end, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || end - begin < 2 * threads) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int total = end - begin;
  const int chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body, &failure, &failure_mutex] {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Draw the degree caps and the pair (a, b) for one trial; exposed so a
/// violating pair can be regenerated from its trial index.
template <class S>
std::tuple<Element<S>, Element<S>, int, int> sample_pair(
    const detail::SampleBasis<S>& basis, const SpecPtr<S>& spec, std::uint64_t seed,
    int trial) {
  TrialRng rng(seed, static_cast<std::uint64_t>(trial));
  const int top = spec->truncation;
  const int deg_a = rng.uniform_int(0, top);
  const int deg_b = rng.uniform_int(0, top - deg_a);
  Element<S> a = basis.draw(spec, basis.scale_sigma, deg_a, rng);
  Element<S> b = basis.draw(spec, basis.scale_tau, deg_b, rng);
  return {std::move(a), std::move(b), deg_a, deg_b};
}

/// Randomized certification of ||a o b||_(rho) <= gamma ||a||_(sigma)
/// ||b||_(tau): norm-isotropic Gaussian pairs with degree caps p + q <= N,
/// deterministic given (seed, count) and independent of thread count.
template <class S>
RatioReport ratio_sample(const SpecPtr<S>& spec, const NormSpec<S>& ns_sigma,
                         const NormSpec<S>& ns_tau, const NormSpec<S>& ns_rho, int count,
                         std::uint64_t seed, int threads = 1) {
  const detail::SampleBasis<S> basis(spec, ns_sigma, ns_tau);
  RatioReport report;
  report.seed = seed;
  report.count = count;
  report.rows.resize(static_cast<std::size_t>(count));

  detail::parallel_for(0, count, threads, [&](int trial) {
    auto [a, b, deg_a, deg_b] = sample_pair(basis, spec, seed, trial);
    const double na = norm(a, ns_sigma);
    const double nb = norm(b, ns_tau);
    const Element<S> ab = product(a, b);
    const double np = norm(ab, ns_rho);
    const double denom = na * nb;
    report.rows[static_cast<std::size_t>(trial)] =
        RatioRow{trial, deg_a, deg_b, denom == 0.0 ? 0.0 : np / denom};
  });

  for (const auto& row : report.rows) {
    if (row.ratio > report.max_ratio) {
      report.max_ratio = row.ratio;
      report.argmax_trial = row.trial;
      report.argmax_degree_a = row.degree_a;
      report.argmax_degree_b = row.degree_b;
    }
  }
  std::vector<double> sorted;
  sorted.reserve(report.rows.size());
  for (const auto& row : report.rows) sorted.push_back(row.ratio);
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double p) {
    if (sorted.empty()) return 0.0;
    const std::size_t rank =
        std::min(sorted.size() - 1,
                 static_cast<std::size_t>(std::ceil(p * sorted.size())) -
                     (p > 0.0 ? 1 : 0));
    return sorted[rank];
  };
  report.q50 = quantile(0.5);
  report.q90 = quantile(0.9);
  report.q99 = quantile(0.99);
  return report;
}

struct BestConstantReport {
  double gamma_best = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  int domain_dim = 0;
  int range_dim = 0;
};

/// Exact best constant for the truncated algebra: the largest singular value
/// of the multiplication map between orthonormalized spaces, by power
/// iteration on T*T with a 1e-10 Rayleigh-quotient tolerance.
template <class S>
BestConstantReport best_constant(const SpecPtr<S>& spec, const NormSpec<S>& ns_sigma,
                                 const NormSpec<S>& ns_tau, const NormSpec<S>& ns_rho,
                                 int degree_cap, double tol = 1e-10, int max_iter = 50000) {
  const AlgebraShape shape = spec->shape();
  const int cap = std::min(degree_cap, spec->truncation);

  std::vector<Monomial> basis;
  std::vector<int> degree_of;
  for (int n = 0; n <= cap; ++n)
    for (auto& m : degree_basis(shape, n)) {
      basis.push_back(std::move(m));
      degree_of.push_back(n);
    }
  std::unordered_map<Monomial, int, MonomialHash> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));

  auto scale = [&](const NormSpec<S>& ns, const Monomial& m) {
    return detail::SampleBasis<S>::monomial_scale(shape, ns, m);  // 1/sqrt(w g)
  };
  std::vector<double> sig_scale(basis.size()), tau_scale(basis.size()), rho_scale(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sig_scale[i] = scale(ns_sigma, basis[i]);
    tau_scale[i] = scale(ns_tau, basis[i]);
    rho_scale[i] = 1.0 / scale(ns_rho, basis[i]);  // sqrt(w g): to orthonormal coords
  }

  // One sparse column per basis pair (i, j) with deg_i + deg_j <= cap.
  std::vector<std::vector<std::pair<int, S>>> columns;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Element<S> mi(spec);
    mi.add_term(basis[i], S(1));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (degree_of[i] + degree_of[j] > cap) continue;
      Element<S> mj(spec);
      mj.add_term(basis[j], S(1));
      Element<S> prod = product(mi, mj);
      std::vector<std::pair<int, S>> col;
      for (const auto& [m, c] : prod.terms()) {
        auto it = index.find(m);
        if (it == index.end()) continue;  // paired contractions stay within cap
        col.emplace_back(it->second,
                         c * S(rho_scale[static_cast<std::size_t>(it->second)] * sig_scale[i] *
                               tau_scale[j]));
      }
      if (!col.empty()) columns.push_back(std::move(col));
    }
  }

  BestConstantReport report;
  report.domain_dim = static_cast<int>(columns.size());
  report.range_dim = static_cast<int>(basis.size());
  if (columns.empty()) return report;

  std::vector<S> x(columns.size());
  TrialRng rng(0x5EEDULL, 0);
  for (auto& v : x) v = S(rng.normal());
  auto normalize = [](std::vector<S>& v) {
    double nrm = 0.0;
    for (const S& c : v) nrm += ScalarTraits<S>::abs_sq(c);
    nrm = std::sqrt(nrm);
    if (nrm > 0.0)
      for (S& c : v) c *= S(1.0 / nrm);
    return nrm;
  };
  normalize(x);

  std::vector<S> y(basis.size());
  std::vector<S> z(columns.size());
  double lam_prev = -1.0;
  double lam = 0.0;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::fill(y.begin(), y.end(), S(0));
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (const auto& [k, v] : columns[c]) y[static_cast<std::size_t>(k)] += x[c] * v;
    lam = 0.0;
    for (const S& v : y) lam += ScalarTraits<S>::abs_sq(v);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      S acc(0);
      for (const auto& [k, v] : columns[c])
        acc += ScalarTraits<S>::conj(v) * y[static_cast<std::size_t>(k)];
      z[c] = acc;
    }
    double res = 0.0;
    for (std::size_t c = 0; c < columns.size(); ++c)
      res += ScalarTraits<S>::abs_sq(z[c] - S(lam) * x[c]);
    report.residual = lam > 0.0 ? std::sqrt(res) / lam : std::sqrt(res);
    if (lam_prev >= 0.0 && std::abs(lam - lam_prev) <= tol * std::max(lam, 1e-300)) {
      report.converged = true;
      ++iter;
      break;
    }
    lam_prev = lam;
    x = z;
    normalize(x);
  }
  report.iterations = iter;
  report.gamma_best = std::sqrt(lam);
  return report;
}

struct ViolationOptions {
  int restarts = 4;
  int steps = 120;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
};

/// Search for a homogeneous pair violating the per-degree estimate
/// ||a o a||_{2p} <= ||a||_p^2 (ratio > 1) under the given Gram convention:
/// structured candidates (sums of disjoint blades, single symmetric
/// generators) first, then gradient ascent from random starts on each
/// degree slice.  Absence of a violation is reported, not thrown.
template <class S>
WitnessReport<S> violation_search(const SpecPtr<S>& spec, Gram gram = Gram::Standard,
                                  const ViolationOptions& opt = {}) {
  NormSpec<S> ns{WeightSpec::flat(), gram, std::nullopt};
  const InnerProduct<S> ip = InnerProduct<S>::from_norm_spec(ns);
  const AlgebraShape shape = spec->shape();
  const int n_cap = spec->truncation;

  WitnessReport<S> best;
  best.found = false;
  best.note = "no candidate";
  auto consider = [&](const Element<S>& a, const std::string& note) {
    if (a.is_zero()) return;
    const double r = detail::measured_ratio(ip, a);
    if (r > best.ratio) {
      best.a = a;
      best.b = a;
      best.ratio = r;
      best.closed_form_ratio = r;
      best.note = note;
    }
  };

  // Structured candidates. Symmetric-letter square: ||e1 o e1|| picks up the
  // 2! Gram factor under the Standard convention.
  int sym_gen = 0;
  if (shape.carrier() == Kind::Symmetric) sym_gen = 1;
  if (shape.kind == Kind::Super && shape.even_count >= 1) sym_gen = 1;
  if (sym_gen > 0 && n_cap >= 2) {
    Element<S> a(spec);
    a.add_term(Monomial{{sym_gen}}, S(1));
    consider(a, "symmetric generator square");
  }
  // Sums of disjoint 2-blades of anticommuting letters.
  {
    int lo = 1;
    int d = spec->generators;
    if (shape.kind == Kind::Super) lo = shape.even_count + 1;
    const bool anti = shape.carrier() == Kind::Antisymmetric ||
                      (shape.kind == Kind::Super && lo <= d);
    if (anti && n_cap >= 4) {
      const int kmax = (d - lo + 1) / 2;
      for (int k = 2; k <= kmax; ++k) {
        Element<S> a(spec);
        for (int i = 0; i < k; ++i)
          a.add_term(Monomial{{lo + 2 * i, lo + 2 * i + 1}}, S(1));
        consider(a, "sum of " + std::to_string(k) + " disjoint blades");
      }
    }
  }
  if (best.ratio > 1.0 + opt.tolerance) {
    best.found = true;
    return best;
  }

  // Gradient ascent from random starts, one homogeneous degree slice at a
  // time (real scalars).
  if constexpr (!ScalarTraits<S>::is_complex && !ScalarTraits<S>::is_exact) {
    for (int deg = 1; deg <= n_cap / 2; ++deg) {
      const std::vector<Monomial> slice = degree_basis(shape, deg);
      if (slice.empty()) continue;
      auto build = [&](const std::vector<double>& x) {
        Element<S> a(spec);
        for (std::size_t i = 0; i < slice.size(); ++i) a.add_term(slice[i], S(x[i]));
        return a;
      };
      auto objective = [&](const std::vector<double>& x) {
        return detail::measured_ratio(ip, build(x));
      };
      for (int restart = 0; restart < opt.restarts; ++restart) {
        TrialRng rng(opt.seed, 0xA5CE57ULL + static_cast<std::uint64_t>(restart) * 64 +
                                   static_cast<std::uint64_t>(deg));
        std::vector<double> x(slice.size());
        for (auto& v : x) v = rng.normal();
        double fx = objective(x);
        double step = 0.25;
        std::vector<double> grad(x.size()), trial(x.size());
        for (int it = 0; it < opt.steps && step > 1e-10; ++it) {
          double gnorm = 0.0;
          for (std::size_t i = 0; i < x.size(); ++i) {
            const double h = 1e-5 * (1.0 + std::abs(x[i]));
            std::vector<double> xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            grad[i] = (objective(xp) - objective(xm)) / (2.0 * h);
            gnorm += grad[i] * grad[i];
          }
          gnorm = std::sqrt(gnorm);
          if (gnorm < 1e-14) break;
          bool improved = false;
          while (step > 1e-10) {
            for (std::size_t i = 0; i < x.size(); ++i)
              trial[i] = x[i] + step * grad[i] / gnorm;
            const double ft = objective(trial);
            if (ft > fx) {
              x = trial;
              fx = ft;
              step *= 1.6;
              improved = true;
              break;
            }
            step *= 0.5;
          }
          if (!improved) break;
        }
        consider(build(x), "gradient ascent on degree " + std::to_string(deg));
      }
    }
  }

  best.found = best.ratio > 1.0 + opt.tolerance;
  if (!best.found && best.note == "no candidate") best.note = "search budget exhausted";
  return best;
}

}  // namespace gradenorm
