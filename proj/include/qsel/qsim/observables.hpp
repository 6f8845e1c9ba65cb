#pragma once

#include <vector>

#include "qsel/qsim/pauli.hpp"
#include "qsel/qsim/state.hpp"

namespace qsel::qsim {

// Partial trace over the complement of `keep` (1-based site indices, any
// order; the output axes follow the order given in `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// Reduced density matrix of a pure state on `keep`; avoids forming the full
// 2^N x 2^N density matrix.
DensityMatrix reduced_density(const StateVector& psi,
                              const std::vector<int>& keep);

double purity(const DensityMatrix& rho);

// <sigma_1^a sigma_j^a> for a in {x, z} (any axis accepted).
double spin_correlation(const StateVector& psi, Axis axis, int j);

// -log2 tr rho_A^2 with A = [1..cut], 1 <= cut <= N-1.
double renyi2_entropy(const StateVector& psi, int cut);

// <sigma_1^z sigma_2^x sigma_4^x ... sigma_{N-1}^x sigma_N^z>; requires odd N.
double string_order(const StateVector& psi);

// Many-body topological invariant on two disjoint contiguous blocks:
//   tr(rho_I u rho_I^{T1} u^dag) / ([tr rho_I1^2 + tr rho_I2^2] / 2)^{3/2}
// with u = (x)_{i in I1} sigma_i^y acting as identity on I2 and T1 the
// partial transpose on the I1 factor. Guards |I1|+|I2| <= 10.
double mbti(const StateVector& psi, const std::vector<int>& block1,
            const std::vector<int>& block2);

// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

}  // namespace qsel::qsim
