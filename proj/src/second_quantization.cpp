#include "gradenorm/second_quantization.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace gradenorm {

namespace {

// Eigendecomposition acceptance tolerance on ||A V - V Lambda||.
constexpr double kSpectralTol = 1e-12;

template <class S, class Matrix>
void spectral_from_eigen(GammaOperator<S>& g, const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("GammaOperator: eigendecomposition failed");
  const Matrix v = es.eigenvectors();
  Matrix lam = Matrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) lam(i, i) = es.eigenvalues()(i);
  const double scale = std::max(1.0, a.norm());
  if ((a * v - v * lam).norm() > kSpectralTol * scale)
    throw std::invalid_argument(
        "GammaOperator: operator is not symmetric/Hermitian within tolerance");
  std::vector<double> vals(static_cast<std::size_t>(a.rows()));
  std::vector<S> vecs(static_cast<std::size_t>(a.rows()) * a.rows());
  for (int k = 0; k < a.rows(); ++k) {
    vals[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
    for (int i = 0; i < a.rows(); ++i)
      vecs[static_cast<std::size_t>(k) * a.rows() + i] = v(i, k);
  }
  GammaSpectralAccess::install(g, std::move(vals), std::move(vecs));
}

}  // namespace

template <>
void GammaOperator<double>::ensure_spectral() {
  if (diagonal_ || spectral_) return;
  Eigen::MatrixXd a(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) a(i, j) = entry(i, j);
  spectral_from_eigen(*this, a);
}

template <>
void GammaOperator<std::complex<double>>::ensure_spectral() {
  if (diagonal_ || spectral_) return;
  Eigen::MatrixXcd a(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) a(i, j) = entry(i, j);
  spectral_from_eigen(*this, a);
}

}  // namespace gradenorm
