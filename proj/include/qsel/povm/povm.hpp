#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsel/qsim/pauli.hpp"
#include "qsel/qsim/state.hpp"

namespace qsel::povm {

using qsim::Axis;
using qsim::Complex;

enum class FamilyKind { TripletPauli, PeriodicString, HusimiGrid };

// A measurement family: Pauli bases on neighboring qubit triplets (chain or
// ring), periodic N-qubit Pauli strings, or Husimi-Q sampling on a fixed
// phase-space grid.
struct PovmFamily {
    FamilyKind kind = FamilyKind::TripletPauli;
    int n_qubits = 0;
    bool ring = false;
    int grid_w = 16, grid_h = 16;
    double grid_min = -3.0, grid_max = 3.0;
    int fock_dim = 16;

    int size() const;

    static PovmFamily triplet_chain(int n);
    static PovmFamily triplet_ring(int n);
    static PovmFamily periodic_string(int n);
    static PovmFamily husimi_grid(int fock_dim = 16);
};

// One setting theta within a family. Triplet settings carry the leftmost
// site (1-based) and a three-axis basis; periodic strings carry only the
// basis; Husimi settings carry a phase-space point.
struct PovmSetting {
    int index = 0;
    int site = 0;
    std::array<Axis, 3> basis{Axis::Z, Axis::Z, Axis::Z};
    Complex alpha{};
};

// Canonical deterministic ordering: site-major then basis lexicographic
// (x < y < z per slot); grid row-major with the real part varying fastest.
std::vector<PovmSetting> enumerate_settings(const PovmFamily& family);

int feature_width(const PovmFamily& family);
int outcome_width(const PovmFamily& family);

// Numeric encoding fed to the policy encoder: one-hot site block plus three
// one-hot basis blocks for triplets, basis blocks only for periodic strings,
// (Re a, Im a) / grid_max for Husimi points. Injective per family.
Eigen::VectorXd featurize(const PovmFamily& family, const PovmSetting& s);

// All settings featurized, one row per setting.
Eigen::MatrixXd feature_matrix(const PovmFamily& family);

std::string describe(const PovmFamily& family, const PovmSetting& s);

}  // namespace qsel::povm
