#include "gradenorm/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace gradenorm {

double dense_svd_best_constant(const SpecPtr<double>& spec, const NormSpec<double>& ns_sigma,
                               const NormSpec<double>& ns_tau, const NormSpec<double>& ns_rho,
                               int degree_cap) {
  const AlgebraShape shape = spec->shape();
  const int cap = std::min(degree_cap, spec->truncation);

  std::vector<Monomial> basis;
  std::vector<int> degree_of;
  for (int n = 0; n <= cap; ++n)
    for (auto& m : degree_basis(shape, n)) {
      basis.push_back(std::move(m));
      degree_of.push_back(n);
    }
  const int dim = static_cast<int>(basis.size());

  auto unit_vector = [&](const NormSpec<double>& ns, int i) {
    Element<double> e(spec);
    e.add_term(basis[static_cast<std::size_t>(i)], 1.0);
    const double nrm = norm(e, ns);
    e *= 1.0 / nrm;
    return e;
  };

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (degree_of[i] + degree_of[j] <= cap) pairs.emplace_back(i, j);

  Eigen::MatrixXd t(dim, static_cast<int>(pairs.size()));
  for (int c = 0; c < static_cast<int>(pairs.size()); ++c) {
    const auto [i, j] = pairs[static_cast<std::size_t>(c)];
    const Element<double> prod = product(unit_vector(ns_sigma, i), unit_vector(ns_tau, j));
    for (int k = 0; k < dim; ++k) {
      const Element<double> yk = unit_vector(ns_rho, k);
      t(k, c) = inner(yk, prod, ns_rho);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
  return svd.singularValues()(0);
}

double naive_permanent(const std::vector<std::vector<double>>& m) {
  const int n = static_cast<int>(m.size());
  if (n > 9) throw std::invalid_argument("naive_permanent: n <= 9");
  if (n == 0) return 1.0;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  double total = 0.0;
  do {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= m[static_cast<std::size_t>(i)][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace gradenorm
