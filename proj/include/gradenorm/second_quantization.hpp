#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gradenorm/algebra.hpp"

namespace gradenorm {

/// The functor Gamma(A): slot-wise application of a d x d operator A on the
/// generator space, lifted to monomials by Gamma(A)(f1 o ... o fn) =
/// (A f1) o ... o (A fn) and Gamma(A) e0 = e0.  Real powers need the
/// spectral form, which exists for diagonal operators by construction and is
/// computed on demand for symmetric/Hermitian ones.
template <class S>
class GammaOperator {
 public:
  static GammaOperator identity(int dim) {
    return diagonal(std::vector<S>(static_cast<std::size_t>(dim), S(1)));
  }

  static GammaOperator diagonal(std::vector<S> diag) {
    GammaOperator g;
    g.dim_ = static_cast<int>(diag.size());
    g.diagonal_ = true;
    g.entries_ = std::move(diag);
    if (g.dim_ < 1) throw std::invalid_argument("GammaOperator: empty diagonal");
    return g;
  }

  static GammaOperator dense(int dim, std::vector<S> row_major) {
    if (dim < 1 || row_major.size() != static_cast<std::size_t>(dim) * dim)
      throw std::invalid_argument("GammaOperator: entries must be d x d");
    GammaOperator g;
    g.dim_ = dim;
    g.diagonal_ = false;
    g.entries_ = std::move(row_major);
    return g;
  }

  int dim() const { return dim_; }
  bool is_diagonal() const { return diagonal_; }

  const S& entry(int i, int j) const {  // 0-based
    if (diagonal_) {
      static const S zero(0);
      return i == j ? entries_[static_cast<std::size_t>(i)] : zero;
    }
    return entries_[static_cast<std::size_t>(i) * dim_ + j];
  }

  const std::vector<S>& raw() const { return entries_; }

  bool has_spectral() const { return diagonal_ || spectral_; }

  /// Eigenvalues in the spectral form (real by construction).
  std::vector<double> eigenvalues() const {
    if (diagonal_) {
      std::vector<double> ev(entries_.size());
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (ScalarTraits<S>::imag(entries_[i]) != typename ScalarTraits<S>::RealType(0))
          throw std::invalid_argument("GammaOperator: diagonal entries must be real");
        ev[i] = ScalarTraits<S>::to_double(entries_[i]);
      }
      return ev;
    }
    if (!spectral_)
      throw std::logic_error("GammaOperator: spectral form not computed");
    return eigvals_;
  }

  double min_eigenvalue() const {
    auto ev = eigenvalues();
    return *std::min_element(ev.begin(), ev.end());
  }

  /// Computes the spectral form of a dense symmetric/Hermitian operator.
  /// Available for double and complex scalars; a no-op for diagonal ones.
  void ensure_spectral();

  /// A^rho via eigenvalue powers.  All eigenvalues must be positive.
  GammaOperator power(double rho) const {
    if (diagonal_) {
      std::vector<S> p(entries_.size());
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        double lam = ScalarTraits<S>::to_double(entries_[i]);
        if (!(lam > 0.0))
          throw std::domain_error("GammaOperator::power: non-positive eigenvalue");
        p[i] = S(std::pow(lam, rho));
      }
      return diagonal(std::move(p));
    }
    if (!spectral_)
      throw std::logic_error("GammaOperator::power: spectral form missing (call ensure_spectral)");
    std::vector<S> out(static_cast<std::size_t>(dim_) * dim_, S(0));
    for (int k = 0; k < dim_; ++k) {
      if (!(eigvals_[k] > 0.0))
        throw std::domain_error("GammaOperator::power: non-positive eigenvalue");
      double lam = std::pow(eigvals_[k], rho);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
          out[static_cast<std::size_t>(i) * dim_ + j] +=
              S(lam) * eigvec(i, k) * ScalarTraits<S>::conj(eigvec(j, k));
    }
    return dense(dim_, std::move(out));
  }

 private:
  const S& eigvec(int i, int k) const { return eigvecs_[static_cast<std::size_t>(k) * dim_ + i]; }

  int dim_ = 0;
  bool diagonal_ = true;
  std::vector<S> entries_;
  bool spectral_ = false;
  std::vector<double> eigvals_;
  std::vector<S> eigvecs_;  // column-major eigenvectors

  friend struct GammaSpectralAccess;
};

struct GammaSpectralAccess {
  template <class S>
  static void install(GammaOperator<S>& g, std::vector<double> vals, std::vector<S> vecs) {
    g.eigvals_ = std::move(vals);
    g.eigvecs_ = std::move(vecs);
    g.spectral_ = true;
  }
};

template <class S>
void GammaOperator<S>::ensure_spectral() {
  if (diagonal_ || spectral_) return;
  throw std::invalid_argument(
      "GammaOperator: spectral form of a dense operator needs double/complex scalars");
}

template <>
void GammaOperator<double>::ensure_spectral();
template <>
void GammaOperator<std::complex<double>>::ensure_spectral();

namespace detail {

// Worst-case slot expansion is d^degree terms per monomial.
constexpr int kDenseGammaDegreeCap = 12;

}  // namespace detail

/// Gamma(A) a: apply A to every letter of every monomial and re-multiply in
/// the class-1 carrier.  Linear; preserves degree.
template <class S>
Element<S> gamma_apply(const GammaOperator<S>& g, const Element<S>& a) {
  if (a.truncated()) throw std::invalid_argument("gamma_apply: truncated input");
  if (!a.spec()) return a;
  if (g.dim() != a.spec()->generators)
    throw std::invalid_argument("gamma_apply: operator dimension mismatch");

  const AlgebraShape shape = a.spec()->shape();
  Element<S> out(a.spec());
  if (g.is_diagonal()) {
    for (const auto& [m, c] : a.terms()) {
      S scale = c;
      for (int letter : m.word) scale *= g.raw()[static_cast<std::size_t>(letter - 1)];
      out.add_term(m, scale);
    }
    return out;
  }

  const int d = g.dim();
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() > detail::kDenseGammaDegreeCap)
      throw std::invalid_argument("gamma_apply: dense operator rejected for degree > 12");
    detail::TermAccumulator<S> cur;
    cur.add(Monomial{}, c);
    Element<S> slice = cur.finish(a.spec(), false);
    for (int letter : m.word) {
      detail::TermAccumulator<S> next;
      std::vector<int> word;
      for (const auto& [pm, pc] : slice.terms()) {
        for (int j = 1; j <= d; ++j) {
          const S& aij = g.entry(j - 1, letter - 1);
          if (ScalarTraits<S>::is_zero(aij)) continue;
          word.assign(pm.word.begin(), pm.word.end());
          word.push_back(j);
          CanonicalWord cw = canonicalize_word(shape, std::move(word));
          if (cw.sign == 0) continue;
          next.add(Monomial{std::move(cw.word)}, S(cw.sign) * pc * aij);
        }
      }
      slice = next.finish(a.spec(), false);
    }
    out += slice;
  }
  return out;
}

/// (Gamma(A))^rho a via eigenvalue powers of A.
template <class S>
Element<S> gamma_power_apply(const GammaOperator<S>& g, double rho, const Element<S>& a) {
  if (rho == 0.0) {
    if (a.truncated()) throw std::invalid_argument("gamma_power_apply: truncated input");
    return a;
  }
  if (rho == 1.0) return gamma_apply(g, a);
  return gamma_apply(g.power(rho), a);
}

/// Relative residual of Gamma(A)(a o b) = (Gamma(A) a) o (Gamma(A) b) in the
/// flat coefficient l2 norm.  Exactly zero in exact arithmetic.
template <class S>
double multiplicativity_residual(const GammaOperator<S>& g, const Element<S>& a,
                                 const Element<S>& b) {
  Element<S> prod = product(a, b);
  if (prod.truncated())
    throw std::invalid_argument("multiplicativity_residual: truncated product");
  Element<S> lhs = gamma_apply(g, prod);
  Element<S> rhs = product(gamma_apply(g, a), gamma_apply(g, b));
  double num = l2_distance(lhs, rhs);
  double den = std::max(l2_norm(lhs), l2_norm(rhs));
  return den == 0.0 ? num : num / den;
}

}  // namespace gradenorm
