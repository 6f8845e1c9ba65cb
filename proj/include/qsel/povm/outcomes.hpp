#pragma once

#include <cstdint>

#include "qsel/povm/povm.hpp"

namespace qsel::povm {

// Outcome statistics for one acquisition. Pauli-triplet settings yield the
// 8 joint outcome probabilities of the rotated triplet (outcome bit 0 is the
// +1 eigenstate, site-major bit order). Periodic strings yield the 8-outcome
// marginal on the first triplet plus the N-qubit parity expectation as a 9th
// entry. Husimi settings yield the single Q value. shots == 0 means exact
// Born statistics.
struct OutcomeStats {
    Eigen::VectorXd values;
    long shots = 0;
};

OutcomeStats outcome_probabilities(const qsim::StateVector& psi,
                                   const PovmFamily& family,
                                   const PovmSetting& s);

// Finite-shot frequencies: multinomial over outcomes for Pauli families,
// binomial for the Husimi vacuum-projection experiment. Reproducible under
// a fixed seed.
OutcomeStats sample_outcomes(const qsim::StateVector& psi,
                             const PovmFamily& family, const PovmSetting& s,
                             long shots, std::uint64_t seed);

// Full 2^N bitstring distribution for a periodic-string setting (debug aid;
// the dataset format stores the bounded 9-entry form).
Eigen::VectorXd periodic_bitstring_probabilities(const qsim::StateVector& psi,
                                                 const PovmSetting& s);

}  // namespace qsel::povm
