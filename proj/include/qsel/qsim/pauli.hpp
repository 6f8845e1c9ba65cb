#pragma once

#include <utility>
#include <vector>

#include "qsel/qsim/state.hpp"

namespace qsel::qsim {

enum class Axis { X, Y, Z };

char axis_to_char(Axis a);
Axis axis_from_char(char c);

Eigen::Matrix2cd pauli_matrix(Axis a);

// A product of single-site Pauli operators times a real coefficient.
// Sites are 1-based; site 1 maps to the most significant bit of the basis
// index, i.e. |psi> = |q1> (x) |q2> (x) ... (x) |qN>.
struct PauliTerm {
    std::vector<std::pair<int, Axis>> factors;
    double coeff = 1.0;
};

// Applies the Pauli product (coeff ignored) to a state vector, O(2^N).
Vector apply_pauli_string(const Vector& amplitudes, int n_qubits,
                          const std::vector<std::pair<int, Axis>>& factors);

// Accumulates coeff * (Pauli product) into a dense 2^N x 2^N matrix.
// Each Pauli string contributes exactly one entry per column.
void add_pauli_term(Matrix& h, int n_qubits, const PauliTerm& term);

// <psi| P |psi> for a Hermitian Pauli product; the imaginary part (roundoff)
// is discarded.
double pauli_expectation(const Vector& amplitudes, int n_qubits,
                         const std::vector<std::pair<int, Axis>>& factors);

}  // namespace qsel::qsim
