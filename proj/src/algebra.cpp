#include "gradenorm/algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace gradenorm {

namespace {

template <class S>
Element<S> generator_element(const SpecPtr<S>& spec, int g) {
  Element<S> e(spec);
  e.add_term(Monomial{{g}}, S(1));
  return e;
}

template <class S>
Element<S> vector_element(const SpecPtr<S>& spec, const std::vector<S>& coeffs) {
  Element<S> e(spec);
  for (int i = 0; i < spec->generators; ++i) e.add_term(Monomial{{i + 1}}, coeffs[i]);
  return e;
}

}  // namespace

std::optional<Element<double>> find_nogo_witness(const SpecPtr<double>& spec) {
  if (spec->truncation < 1) return std::nullopt;
  if (spec->is_class1()) return generator_element(spec, 1);

  // Paired over R: need omega(f,f) >= 0, i.e. the symmetric part of omega
  // must have a nonnegative eigenvalue.
  const int d = spec->generators;
  Eigen::MatrixXd sym(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      sym(i, j) = 0.5 * (spec->omega(i + 1, j + 1) + spec->omega(j + 1, i + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const int top = d - 1;  // eigenvalues ascend
  if (es.eigenvalues()(top) < 0.0) return std::nullopt;
  std::vector<double> coeffs(d);
  for (int i = 0; i < d; ++i) coeffs[i] = es.eigenvectors()(i, top);
  return vector_element(spec, coeffs);
}

std::optional<Element<std::complex<double>>> find_nogo_witness(
    const SpecPtr<std::complex<double>>& spec) {
  using C = std::complex<double>;
  if (spec->truncation < 1) return std::nullopt;
  if (spec->is_class1()) return generator_element(spec, 1);

  // Paired over C: pick v with s(v,v) != 0 for the symmetric part s of
  // omega (or any v when s vanishes identically), then rotate the phase so
  // that omega(f,f) = e^{2i theta} s(v,v) lands on the nonnegative axis.
  const int d = spec->generators;
  auto sym = [&](int i, int j) {
    return 0.5 * (spec->omega(i + 1, j + 1) + spec->omega(j + 1, i + 1));
  };
  std::vector<C> v(d, C(0));
  C value(0);
  for (int i = 0; i < d && value == C(0); ++i) {
    if (sym(i, i) != C(0)) {
      v.assign(d, C(0));
      v[i] = 1.0;
      value = sym(i, i);
    }
  }
  if (value == C(0)) {
    for (int i = 0; i < d && value == C(0); ++i)
      for (int j = i + 1; j < d && value == C(0); ++j)
        if (sym(i, j) != C(0)) {
          v.assign(d, C(0));
          v[i] = 1.0;
          v[j] = 1.0;
          value = sym(i, i) + sym(j, j) + 2.0 * sym(i, j);
        }
  }
  if (value == C(0)) {
    v.assign(d, C(0));
    v[0] = 1.0;  // omega(f,f) = 0 >= 0 suffices
  }
  double theta = value == C(0) ? 0.0 : -0.5 * std::arg(value);
  const C phase = std::polar(1.0, theta);
  double nrm = 0.0;
  for (const C& c : v) nrm += std::norm(c);
  nrm = std::sqrt(nrm);
  for (C& c : v) c *= phase / nrm;
  return vector_element(spec, v);
}

}  // namespace gradenorm
