#pragma once

#include "gradenorm/analyzer.hpp"

namespace gradenorm {

// Independent oracle routes used by the test and acceptance suites.  These
// deliberately avoid the code paths they cross-check: the SVD oracle builds
// the multiplication matrix through weighted inner products and factors it
// densely, and the naive permanent is the n!-term expansion.

/// Largest singular value of the multiplication map via a dense SVD.
double dense_svd_best_constant(const SpecPtr<double>& spec, const NormSpec<double>& ns_sigma,
                               const NormSpec<double>& ns_tau, const NormSpec<double>& ns_rho,
                               int degree_cap);

/// Permanent by explicit permutation expansion; n <= 9.
double naive_permanent(const std::vector<std::vector<double>>& m);

}  // namespace gradenorm
