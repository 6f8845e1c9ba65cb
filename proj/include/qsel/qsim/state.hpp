#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace qsel::qsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

enum class SpaceKind { Qubits, Fock };

// Identifies the Hilbert space a state or density matrix lives in:
// a chain of `size` qubits (dim 2^size) or a Fock space truncated at `size`.
struct SpaceTag {
    SpaceKind kind = SpaceKind::Qubits;
    int size = 0;

    Eigen::Index dim() const {
        return kind == SpaceKind::Qubits ? (Eigen::Index{1} << size)
                                         : Eigen::Index{size};
    }
    bool operator==(const SpaceTag&) const = default;
};

struct StateVector {
    Vector amplitudes;
    SpaceTag space;

    int qubits() const { return space.size; }
    Eigen::Index dim() const { return amplitudes.size(); }
};

struct DensityMatrix {
    Matrix entries;
    SpaceTag space;

    Eigen::Index dim() const { return entries.rows(); }
};

StateVector qubit_state(Vector amplitudes, int n_qubits);
StateVector fock_state(Vector amplitudes, int d_trunc);
DensityMatrix pure_density(const StateVector& psi);

// Verifies unit norm (within tol) and that the length matches the space tag.
bool is_valid_state(const StateVector& psi, double tol = 1e-10);

// Throws qsel::numerical_error when Hermiticity (1e-10), unit trace (1e-10)
// or the eigenvalue floor (-1e-8) is violated.
void check_density(const DensityMatrix& rho);

// Clamps tiny negative eigenvalues and renormalizes the trace. Used by
// iterative reconstructions to keep iterates physical.
DensityMatrix project_to_physical(const DensityMatrix& rho);

}  // namespace qsel::qsim
