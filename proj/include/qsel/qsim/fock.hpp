#pragma once

#include "qsel/qsim/state.hpp"

namespace qsel::qsim {

// Raw truncated coherent amplitudes c_n = exp(-|a|^2/2) a^n / sqrt(n!),
// n = 0..d_trunc-1, before renormalization.
Vector coherent_amplitudes(Complex alpha, int d_trunc);

// Probability mass lost to truncation, 1 - sum |c_n|^2.
double coherent_tail_mass(Complex alpha, int d_trunc);

// Truncated coherent state, renormalized to unit norm. Warns on stderr when
// the truncation tail mass exceeds 0.05.
StateVector coherent_state(Complex alpha, int d_trunc);

// Four-component cat state: equal-phase superposition of |a>, |-a>, |ia>,
// |-ia>, renormalized after truncation. Requires d_trunc >= 16.
StateVector cat_state(Complex alpha, int d_trunc);

// Husimi-Q value <a|rho|a> at one phase-space point, real in [0, 1].
double husimi_q(const DensityMatrix& rho, Complex alpha);
double husimi_q(const StateVector& psi, Complex alpha);

}  // namespace qsel::qsim
