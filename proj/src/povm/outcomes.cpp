#include "qsel/povm/outcomes.hpp"

#include <cmath>

#include "qsel/common/errors.hpp"
#include "qsel/common/rng.hpp"
#include "qsel/qsim/fock.hpp"

namespace qsel::povm {

namespace {

using qsim::StateVector;
using qsim::Vector;

// Basis-change unitary: rows are the measurement-basis bras, so measuring
// the rotated state in the computational basis realizes the Pauli basis.
// Outcome bit 0 is the +1 eigenstate.
Eigen::Matrix2cd basis_rotation(Axis a) {
    constexpr Complex i{0.0, 1.0};
    Eigen::Matrix2cd u;
    const double s = 1.0 / std::sqrt(2.0);
    switch (a) {
        case Axis::X: u << s, s, s, -s; break;
        case Axis::Y: u << s, -i * s, s, i * s; break;
        case Axis::Z: u.setIdentity(); break;
    }
    return u;
}

void apply_single_qubit(Vector& amps, int n_qubits, int site,
                        const Eigen::Matrix2cd& u) {
    const Eigen::Index bit = Eigen::Index{1} << (n_qubits - site);
    const Eigen::Index dim = amps.size();
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (j & bit) continue;
        const Complex a0 = amps[j];
        const Complex a1 = amps[j | bit];
        amps[j] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[j | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

int wrap_site(int site, int n) { return (site - 1) % n + 1; }

// Rotated copy of the state for a triplet or periodic-string setting.
Vector rotated_state(const StateVector& psi, const PovmFamily& family,
                     const PovmSetting& s) {
    Vector amps = psi.amplitudes;
    const int n = psi.qubits();
    if (family.kind == FamilyKind::TripletPauli) {
        for (int slot = 0; slot < 3; ++slot) {
            apply_single_qubit(amps, n, wrap_site(s.site + slot, n),
                               basis_rotation(s.basis[slot]));
        }
    } else {
        for (int q = 1; q <= n; ++q) {
            apply_single_qubit(amps, n, q, basis_rotation(s.basis[(q - 1) % 3]));
        }
    }
    return amps;
}

// Joint outcome distribution of three (possibly wrapped) sites.
Eigen::VectorXd triplet_marginal(const Vector& amps, int n_qubits,
                                 int leftmost_site) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(8);
    std::array<Eigen::Index, 3> bits;
    for (int slot = 0; slot < 3; ++slot) {
        bits[slot] = Eigen::Index{1}
                     << (n_qubits - wrap_site(leftmost_site + slot, n_qubits));
    }
    for (Eigen::Index j = 0; j < amps.size(); ++j) {
        int o = ((j & bits[0]) ? 4 : 0) | ((j & bits[1]) ? 2 : 0) |
                ((j & bits[2]) ? 1 : 0);
        p[o] += std::norm(amps[j]);
    }
    return p;
}

double parity_expectation(const Vector& amps) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < amps.size(); ++j) {
        double w = std::norm(amps[j]);
        acc += (__builtin_popcountll(static_cast<unsigned long long>(j)) & 1)
                   ? -w
                   : w;
    }
    return acc;
}

void check_space(const qsim::StateVector& psi, const PovmFamily& family) {
    if (family.kind == FamilyKind::HusimiGrid) {
        if (psi.space.kind != qsim::SpaceKind::Fock) {
            throw config_error("outcomes: Husimi family needs a Fock state");
        }
    } else {
        if (psi.space.kind != qsim::SpaceKind::Qubits ||
            psi.qubits() != family.n_qubits) {
            throw config_error("outcomes: state does not match family qubits");
        }
    }
}

}  // namespace

OutcomeStats outcome_probabilities(const qsim::StateVector& psi,
                                   const PovmFamily& family,
                                   const PovmSetting& s) {
    check_space(psi, family);
    OutcomeStats out;
    out.shots = 0;
    switch (family.kind) {
        case FamilyKind::TripletPauli: {
            const Vector amps = rotated_state(psi, family, s);
            out.values = triplet_marginal(amps, psi.qubits(), s.site);
            break;
        }
        case FamilyKind::PeriodicString: {
            const Vector amps = rotated_state(psi, family, s);
            out.values.resize(9);
            out.values.head(8) = triplet_marginal(amps, psi.qubits(), 1);
            out.values[8] = parity_expectation(amps);
            break;
        }
        case FamilyKind::HusimiGrid: {
            out.values.resize(1);
            out.values[0] = qsim::husimi_q(psi, s.alpha);
            break;
        }
    }
    return out;
}

OutcomeStats sample_outcomes(const qsim::StateVector& psi,
                             const PovmFamily& family, const PovmSetting& s,
                             long shots, std::uint64_t seed) {
    if (shots < 1) {
        throw config_error("sample_outcomes: shots >= 1 required");
    }
    check_space(psi, family);
    Rng rng(seed);
    OutcomeStats out;
    out.shots = shots;

    auto sample_discrete = [&](const Eigen::VectorXd& p) {
        std::discrete_distribution<int> dist(p.data(), p.data() + p.size());
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(p.size());
        for (long t = 0; t < shots; ++t) counts[dist(rng)] += 1.0;
        return counts;
    };

    switch (family.kind) {
        case FamilyKind::TripletPauli: {
            const Eigen::VectorXd p =
                outcome_probabilities(psi, family, s).values;
            out.values = sample_discrete(p) / double(shots);
            break;
        }
        case FamilyKind::PeriodicString: {
            const Vector amps = rotated_state(psi, family, s);
            Eigen::VectorXd p(amps.size());
            for (Eigen::Index j = 0; j < amps.size(); ++j) {
                p[j] = std::norm(amps[j]);
            }
            std::discrete_distribution<long> dist(p.data(), p.data() + p.size());
            Eigen::VectorXd values = Eigen::VectorXd::Zero(9);
            const int n = psi.qubits();
            for (long t = 0; t < shots; ++t) {
                const long j = dist(rng);
                const int o = int(((j >> (n - 1)) & 1) * 4 +
                                  ((j >> (n - 2)) & 1) * 2 + ((j >> (n - 3)) & 1));
                values[o] += 1.0;
                values[8] +=
                    (__builtin_popcountll(static_cast<unsigned long long>(j)) & 1)
                        ? -1.0
                        : 1.0;
            }
            out.values = values / double(shots);
            break;
        }
        case FamilyKind::HusimiGrid: {
            const double q = qsim::husimi_q(psi, s.alpha);
            std::binomial_distribution<long> dist(shots, q);
            out.values.resize(1);
            out.values[0] = double(dist(rng)) / double(shots);
            break;
        }
    }
    return out;
}

Eigen::VectorXd periodic_bitstring_probabilities(const qsim::StateVector& psi,
                                                 const PovmSetting& s) {
    PovmFamily family = PovmFamily::periodic_string(psi.qubits());
    const Vector amps = rotated_state(psi, family, s);
    Eigen::VectorXd p(amps.size());
    for (Eigen::Index j = 0; j < amps.size(); ++j) p[j] = std::norm(amps[j]);
    return p;
}

}  // namespace qsel::povm
