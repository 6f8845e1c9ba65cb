#pragma once

#include <vector>

#include "qsel/povm/povm.hpp"

namespace qsel::predict {

// 27-bin basis histogram of a Pauli-setting sequence, normalized to sum 1;
// sites and selection order are ignored.
Eigen::VectorXd basis_bin_vector(const std::vector<int>& thetas);

// Correlation of two strategies inside a population with the given extreme
// pairwise distances: (d_max - d) / (d_max - d_min); a degenerate population
// (d_max == d_min) makes every pair fully correlated (1).
double strategy_correlation(double d, double d_min, double d_max);

// Pairwise correlation matrix over a pool of bin vectors (L2 distances).
Eigen::MatrixXd strategy_correlation_matrix(
    const std::vector<Eigen::VectorXd>& bins);

}  // namespace qsel::predict
