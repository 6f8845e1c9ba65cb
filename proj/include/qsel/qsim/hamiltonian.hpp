#pragma once

#include <vector>

#include "qsel/qsim/pauli.hpp"
#include "qsel/qsim/state.hpp"

namespace qsel::qsim {

enum class Model { ClusterIsingOpen, ClusterIsingPeriodic, Xxz };

// Couplings for the supported spin-chain families. Cluster-Ising uses
// (h1, h2); the bond-alternating XXZ chain uses (j, jp, delta) plus the
// optional off-diagonal perturbation strength b acting on open-chain bonds.
struct HamiltonianSpec {
    Model model = Model::ClusterIsingOpen;
    int n_qubits = 0;
    double h1 = 0.0, h2 = 0.0;
    double j = 0.0, jp = 0.0, delta = 0.0, b = 0.0;

    static HamiltonianSpec cluster_ising_open(int n, double h1, double h2);
    static HamiltonianSpec cluster_ising_periodic(int n, double h1, double h2);
    static HamiltonianSpec xxz(int n, double j, double jp, double delta,
                               double b = 0.0);
};

// Expands the spec into its Pauli-term list. Periodic models wrap site
// indices via N+1 = 1, N+2 = 2.
std::vector<PauliTerm> hamiltonian_terms(const HamiltonianSpec& spec);

// Dense 2^N x 2^N Hermitian matrix. Guards: N > 14 is rejected
// (guard_error), XXZ requires even N >= 4, every model requires N >= 3.
Matrix build_hamiltonian(const HamiltonianSpec& spec);

struct GroundState {
    StateVector state;
    double energy = 0.0;
    double gap = 0.0;        // distance to the second-lowest eigenvalue
    bool degenerate = false; // gap < 1e-10
};

// Lowest eigenpair of a Hermitian matrix. Dense spectra are used up to
// dim 2048; larger problems fall back to Lanczos with full
// reorthogonalization. The eigenvector phase is fixed by making the first
// amplitude of modulus > 1e-8 real positive.
GroundState ground_state(const Matrix& h);
GroundState ground_state(const HamiltonianSpec& spec);

// Lanczos path, exposed for direct testing. Returns the two lowest Ritz
// values alongside the converged ground vector.
GroundState ground_state_lanczos(const Matrix& h, int max_iter = 400,
                                 double tol = 1e-13);

}  // namespace qsel::qsim
