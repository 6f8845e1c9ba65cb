#pragma once

#include <utility>
#include <vector>

#include "qsel/qsim/state.hpp"

namespace qsel::predict {

struct ImleOptions {
    double epsilon = 0.25;  // dilution strength of the fixed-point map
    double tol = 1e-10;     // stop when the likelihood gain drops below this
    int max_iter = 2000;
    double prob_floor = 1e-12;
};

struct TomographyResult {
    qsim::DensityMatrix rho_hat;
    int iterations = 0;
    std::vector<double> log_likelihood;  // one entry per accepted step
    int clamp_events = 0;                // p_i underflows clamped at the floor
    int step_rejections = 0;             // dilution back-offs taken
};

// Diluted iterative MLE over Husimi-Q samples: measurement operators are
// coherent-state projectors at the sampled phase-space points, the iteration
//   rho <- N[ G rho G ],  G = (1 - eps) I + eps R(rho),
//   R(rho) = sum_i (d_i / p_i) |a_i><a_i|
// starts from the maximally mixed state. A step that would lower the
// likelihood retries with halved eps, so the accepted-step likelihood trace
// is non-decreasing.
TomographyResult imle_reconstruct(
    const std::vector<std::pair<qsim::Complex, double>>& points, int d_trunc,
    const ImleOptions& opts = {});

}  // namespace qsel::predict
