#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>

#include "gradenorm/second_quantization.hpp"

namespace gradenorm {

/// Per-degree Gram convention.  Normalized carries the (n!)^-1 factor of the
/// symmetric/antisymmetric degree inner products; Standard omits it
/// (equivalently, multiplies the weights by n!).
enum class Gram { Normalized, Standard };

std::string_view gram_name(Gram g);
Gram gram_from_name(std::string_view name);

/// Positive per-degree weight family w_0 = 1, w_n > 0.
struct WeightSpec {
  enum class Family { Explicit, FactorialInv, FactorialInvShift, SigmaRhoS, StandardFactorial };

  Family family = Family::FactorialInv;
  double sigma = 0.0;
  double rho = 0.0;
  double s = 0.0;
  std::vector<double> values;  // Explicit: w_0 .. w_K

  static WeightSpec factorial_inv() { return WeightSpec{Family::FactorialInv, 0, 0, 0, {}}; }
  static WeightSpec factorial_inv_shift() {
    return WeightSpec{Family::FactorialInvShift, 0, 0, 0, {}};
  }
  static WeightSpec standard_factorial() {
    return WeightSpec{Family::StandardFactorial, 0, 0, 0, {}};
  }
  static WeightSpec sigma_rho_s(double sigma, double rho, double s) {
    return WeightSpec{Family::SigmaRhoS, sigma, rho, s, {}};
  }
  /// w_n = 1 for all n, i.e. SigmaRhoS(0, 0, 0).
  static WeightSpec flat() { return sigma_rho_s(0, 0, 0); }
  static WeightSpec explicit_list(std::vector<double> w) {
    return WeightSpec{Family::Explicit, 0, 0, 0, std::move(w)};
  }

  double weight(int n) const;
  double log_weight(int n) const;
  void validate(int max_degree) const;
  std::string describe() const;

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

std::string_view weight_family_name(WeightSpec::Family f);
WeightSpec::Family weight_family_from_name(std::string_view name);

/// n! as a double (exact through 22, correctly rounded beyond) and its log.
double factorial(int n);
double log_factorial(int n);

/// Ryser inclusion-exclusion permanent, 2^n * n cost.  Exact for integer
/// inputs within the 53-bit range.  n <= 20.
template <class S>
S permanent(const std::vector<std::vector<S>>& m) {
  const int n = static_cast<int>(m.size());
  if (n > 20) throw std::invalid_argument("permanent: matrix larger than 20 x 20");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("permanent: matrix must be square");
  if (n == 0) return S(1);

  std::vector<S> rowsum(static_cast<std::size_t>(n), S(0));
  S total(0);
  std::uint32_t prev = 0;
  const std::uint32_t end = 1u << n;
  for (std::uint32_t k = 1; k < end; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const std::uint32_t diff = gray ^ prev;
    const int j = std::countr_zero(diff);
    if (gray & diff)
      for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] += m[i][j];
    else
      for (int i = 0; i < n; ++i) rowsum[static_cast<std::size_t>(i)] -= m[i][j];
    S prod(1);
    for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    if ((n - std::popcount(gray)) % 2 == 0)
      total += prod;
    else
      total -= prod;
    prev = gray;
  }
  return total;
}

/// Diagonal Gram value <M, M> of a canonical monomial with orthonormal
/// generators: product of letter multiplicities factorials over the
/// symmetric letters, divided by n! under the Normalized convention.
double gram_diag(const AlgebraShape& shape, const Monomial& m, Gram gram);

namespace detail {

template <class S>
int homogeneous_degree(const Element<S>& a) {  // -1 for the zero element
  if (a.is_zero()) return -1;
  int lo = a.terms().begin()->first.degree();
  int hi = a.terms().rbegin()->first.degree();
  if (lo != hi) throw std::invalid_argument("degree_inner: element is not homogeneous");
  return lo;
}

}  // namespace detail

/// Sesquilinear per-degree inner product of two homogeneous elements of the
/// same degree (conjugate-linear in the first argument).
template <class S>
S degree_inner(const Element<S>& a, const Element<S>& b, Gram gram) {
  const int da = detail::homogeneous_degree(a);
  const int db = detail::homogeneous_degree(b);
  if (da < 0 || db < 0) return S(0);
  if (da != db) throw std::invalid_argument("degree_inner: degree mismatch");
  const AlgebraShape shape = a.spec()->shape();
  S total(0);
  const auto& small = a.terms().size() <= b.terms().size() ? a : b;
  const auto& large = a.terms().size() <= b.terms().size() ? b : a;
  const bool small_is_a = &small == &a;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    const S& ca = small_is_a ? c : it->second;
    const S& cb = small_is_a ? it->second : c;
    total += ScalarTraits<S>::conj(ca) * cb * S(gram_diag(shape, m, gram));
  }
  return total;
}

template <class S>
double degree_norm(const Element<S>& a, Gram gram) {
  return std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(
                                     ScalarTraits<S>::real(degree_inner(a, a, gram)))));
}

/// Optional Gamma(A)^rho factor inside the degree norms (the generalized
/// family): A positive with min eigenvalue >= 2 when used for certification.
template <class S>
struct GammaTwist {
  GammaOperator<S> op;
  double exponent = 1.0;
};

/// A composite Hilbert norm: weight family + Gram convention + optional
/// Gamma twist.  With a twist present, the SigmaRhoS 2^(rho n) factor is
/// replaced by the twist.
template <class S>
struct NormSpec {
  WeightSpec weights;
  Gram gram = Gram::Normalized;
  std::optional<GammaTwist<S>> twist;

  double effective_weight(int n) const {
    if (twist && weights.family == WeightSpec::Family::SigmaRhoS) {
      WeightSpec w = weights;
      w.rho = 0.0;
      return w.weight(n);
    }
    return weights.weight(n);
  }
};

namespace detail {

template <class S>
Element<S> twist_degree_slice(const NormSpec<S>& ns, const Element<S>& slice) {
  if (!ns.twist || slice.is_zero()) return slice;
  return gamma_power_apply(ns.twist->op, ns.twist->exponent, slice);
}

}  // namespace detail

/// ||a||^2 = sum_n w_n <a_n', a_n'> with a_n' the (optionally twisted)
/// degree-n component.  Rejects truncated inputs: inequalities are only
/// asserted on exactly represented products.
template <class S>
S inner(const Element<S>& a, const Element<S>& b, const NormSpec<S>& ns) {
  if (a.truncated() || b.truncated())
    throw std::invalid_argument("inner: truncated input");
  a.require_same_spec(b);
  const int top = std::max(a.max_degree(), b.max_degree());
  S total(0);
  for (int n = 0; n <= top; ++n) {
    Element<S> an = detail::twist_degree_slice(ns, project_degree(a, n));
    Element<S> bn = detail::twist_degree_slice(ns, project_degree(b, n));
    if (an.is_zero() || bn.is_zero()) continue;
    total += S(ns.effective_weight(n)) * degree_inner(an, bn, ns.gram);
  }
  return total;
}

template <class S>
double norm(const Element<S>& a, const NormSpec<S>& ns) {
  if (a.truncated()) throw std::invalid_argument("norm: truncated input");
  double total = 0.0;
  for (int n = 0; n <= a.max_degree(); ++n) {
    Element<S> an = detail::twist_degree_slice(ns, project_degree(a, n));
    if (an.is_zero()) continue;
    total += ns.effective_weight(n) *
             ScalarTraits<S>::to_double(ScalarTraits<S>::real(degree_inner(an, an, ns.gram)));
  }
  return std::sqrt(std::max(0.0, total));
}

}  // namespace gradenorm
