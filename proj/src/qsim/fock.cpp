#include "qsel/qsim/fock.hpp"

#include <cmath>
#include <iostream>

#include "qsel/common/errors.hpp"

namespace qsel::qsim {

namespace {

void warn_tail(const char* what, Complex alpha, int d_trunc) {
    double tail = coherent_tail_mass(alpha, d_trunc);
    if (tail > 0.05) {
        std::cerr << "[qsim] warning: " << what << " at |alpha|="
                  << std::abs(alpha) << " loses tail mass " << tail
                  << " under truncation d=" << d_trunc << "\n";
    }
}

}  // namespace

Vector coherent_amplitudes(Complex alpha, int d_trunc) {
    if (d_trunc < 2) {
        throw config_error("coherent_amplitudes: d_trunc >= 2 required");
    }
    Vector c(d_trunc);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d_trunc; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    }
    return c;
}

double coherent_tail_mass(Complex alpha, int d_trunc) {
    return 1.0 - coherent_amplitudes(alpha, d_trunc).squaredNorm();
}

StateVector coherent_state(Complex alpha, int d_trunc) {
    warn_tail("coherent state", alpha, d_trunc);
    Vector c = coherent_amplitudes(alpha, d_trunc);
    c.normalize();
    return fock_state(std::move(c), d_trunc);
}

StateVector cat_state(Complex alpha, int d_trunc) {
    if (d_trunc < 16) {
        throw config_error("cat_state: d_trunc >= 16 required");
    }
    warn_tail("cat state", alpha, d_trunc);
    constexpr Complex i{0.0, 1.0};
    // (|a> + |-a> + |ia> + |-ia>) up to overall scale; the written logical
    // prefactors are not exactly normalizing, so the sum is renormalized.
    Vector c = coherent_amplitudes(alpha, d_trunc) +
               coherent_amplitudes(-alpha, d_trunc) +
               coherent_amplitudes(i * alpha, d_trunc) +
               coherent_amplitudes(-i * alpha, d_trunc);
    c.normalize();
    return fock_state(std::move(c), d_trunc);
}

double husimi_q(const DensityMatrix& rho, Complex alpha) {
    if (rho.space.kind != SpaceKind::Fock) {
        throw config_error("husimi_q: Fock-space density matrix required");
    }
    const Vector a = coherent_state(alpha, rho.space.size).amplitudes;
    return (a.adjoint() * rho.entries * a)(0).real();
}

double husimi_q(const StateVector& psi, Complex alpha) {
    if (psi.space.kind != SpaceKind::Fock) {
        throw config_error("husimi_q: Fock-space state required");
    }
    const Vector a = coherent_state(alpha, psi.space.size).amplitudes;
    return std::norm(a.dot(psi.amplitudes));
}

}  // namespace qsel::qsim
