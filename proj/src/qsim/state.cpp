#include "qsel/qsim/state.hpp"

#include <Eigen/Eigenvalues>

#include "qsel/common/errors.hpp"

namespace qsel::qsim {

StateVector qubit_state(Vector amplitudes, int n_qubits) {
    SpaceTag tag{SpaceKind::Qubits, n_qubits};
    if (amplitudes.size() != tag.dim()) {
        throw config_error("qubit_state: amplitude length does not match 2^N");
    }
    return StateVector{std::move(amplitudes), tag};
}

StateVector fock_state(Vector amplitudes, int d_trunc) {
    SpaceTag tag{SpaceKind::Fock, d_trunc};
    if (amplitudes.size() != tag.dim()) {
        throw config_error("fock_state: amplitude length does not match d_trunc");
    }
    return StateVector{std::move(amplitudes), tag};
}

DensityMatrix pure_density(const StateVector& psi) {
    return DensityMatrix{psi.amplitudes * psi.amplitudes.adjoint(), psi.space};
}

bool is_valid_state(const StateVector& psi, double tol) {
    if (psi.amplitudes.size() != psi.space.dim()) return false;
    return std::abs(psi.amplitudes.squaredNorm() - 1.0) <= tol;
}

void check_density(const DensityMatrix& rho) {
    const Matrix& m = rho.entries;
    if (m.rows() != m.cols() || m.rows() != rho.space.dim()) {
        throw numerical_error("density matrix: shape does not match space tag");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw numerical_error("density matrix: not Hermitian within 1e-10");
    }
    if (std::abs(m.trace().real() - 1.0) > 1e-10 ||
        std::abs(m.trace().imag()) > 1e-10) {
        throw numerical_error("density matrix: trace != 1 within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8) {
        throw numerical_error("density matrix: eigenvalue below -1e-8");
    }
}

DensityMatrix project_to_physical(const DensityMatrix& rho) {
    Matrix sym = 0.5 * (rho.entries + rho.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    double total = vals.sum();
    if (total <= 0.0) {
        throw numerical_error("project_to_physical: state has no positive mass");
    }
    vals /= total;
    Matrix out = es.eigenvectors() * vals.asDiagonal() *
                 es.eigenvectors().adjoint();
    return DensityMatrix{std::move(out), rho.space};
}

}  // namespace qsel::qsim
