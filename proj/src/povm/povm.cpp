#include "qsel/povm/povm.hpp"

#include "qsel/common/errors.hpp"

namespace qsel::povm {

namespace {

constexpr Axis kAxisOrder[3] = {Axis::X, Axis::Y, Axis::Z};

void require_chain(const PovmFamily& f, int min_n) {
    if (f.n_qubits < min_n) {
        throw config_error("povm family: qubit count too small");
    }
}

int triplet_sites(const PovmFamily& f) {
    return f.ring ? f.n_qubits : f.n_qubits - 2;
}

}  // namespace

int PovmFamily::size() const {
    switch (kind) {
        case FamilyKind::TripletPauli: return triplet_sites(*this) * 27;
        case FamilyKind::PeriodicString: return 27;
        case FamilyKind::HusimiGrid: return grid_w * grid_h;
    }
    return 0;
}

PovmFamily PovmFamily::triplet_chain(int n) {
    PovmFamily f;
    f.kind = FamilyKind::TripletPauli;
    f.n_qubits = n;
    f.ring = false;
    require_chain(f, 3);
    return f;
}

PovmFamily PovmFamily::triplet_ring(int n) {
    PovmFamily f;
    f.kind = FamilyKind::TripletPauli;
    f.n_qubits = n;
    f.ring = true;
    require_chain(f, 3);
    return f;
}

PovmFamily PovmFamily::periodic_string(int n) {
    PovmFamily f;
    f.kind = FamilyKind::PeriodicString;
    f.n_qubits = n;
    require_chain(f, 3);
    return f;
}

PovmFamily PovmFamily::husimi_grid(int fock_dim) {
    PovmFamily f;
    f.kind = FamilyKind::HusimiGrid;
    f.fock_dim = fock_dim;
    return f;
}

std::vector<PovmSetting> enumerate_settings(const PovmFamily& family) {
    std::vector<PovmSetting> settings;
    settings.reserve(family.size());
    switch (family.kind) {
        case FamilyKind::TripletPauli: {
            const int sites = triplet_sites(family);
            for (int site = 1; site <= sites; ++site) {
                for (int b = 0; b < 27; ++b) {
                    PovmSetting s;
                    s.index = int(settings.size());
                    s.site = site;
                    s.basis = {kAxisOrder[b / 9], kAxisOrder[(b / 3) % 3],
                               kAxisOrder[b % 3]};
                    settings.push_back(s);
                }
            }
            break;
        }
        case FamilyKind::PeriodicString: {
            for (int b = 0; b < 27; ++b) {
                PovmSetting s;
                s.index = b;
                s.basis = {kAxisOrder[b / 9], kAxisOrder[(b / 3) % 3],
                           kAxisOrder[b % 3]};
                settings.push_back(s);
            }
            break;
        }
        case FamilyKind::HusimiGrid: {
            const int w = family.grid_w, h = family.grid_h;
            for (int row = 0; row < h; ++row) {
                for (int col = 0; col < w; ++col) {
                    PovmSetting s;
                    s.index = row * w + col;
                    double re = family.grid_min +
                                (family.grid_max - family.grid_min) * col / (w - 1);
                    double im = family.grid_min +
                                (family.grid_max - family.grid_min) * row / (h - 1);
                    s.alpha = Complex(re, im);
                    settings.push_back(s);
                }
            }
            break;
        }
    }
    return settings;
}

int feature_width(const PovmFamily& family) {
    switch (family.kind) {
        case FamilyKind::TripletPauli: return triplet_sites(family) + 9;
        case FamilyKind::PeriodicString: return 9;
        case FamilyKind::HusimiGrid: return 2;
    }
    return 0;
}

int outcome_width(const PovmFamily& family) {
    switch (family.kind) {
        case FamilyKind::TripletPauli: return 8;
        case FamilyKind::PeriodicString: return 9;
        case FamilyKind::HusimiGrid: return 1;
    }
    return 0;
}

Eigen::VectorXd featurize(const PovmFamily& family, const PovmSetting& s) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(feature_width(family));
    switch (family.kind) {
        case FamilyKind::TripletPauli: {
            v[s.site - 1] = 1.0;
            const int base = triplet_sites(family);
            for (int slot = 0; slot < 3; ++slot) {
                v[base + 3 * slot + static_cast<int>(s.basis[slot])] = 1.0;
            }
            break;
        }
        case FamilyKind::PeriodicString: {
            for (int slot = 0; slot < 3; ++slot) {
                v[3 * slot + static_cast<int>(s.basis[slot])] = 1.0;
            }
            break;
        }
        case FamilyKind::HusimiGrid: {
            v[0] = s.alpha.real() / family.grid_max;
            v[1] = s.alpha.imag() / family.grid_max;
            break;
        }
    }
    return v;
}

Eigen::MatrixXd feature_matrix(const PovmFamily& family) {
    const auto settings = enumerate_settings(family);
    Eigen::MatrixXd m(settings.size(), feature_width(family));
    for (const PovmSetting& s : settings) {
        m.row(s.index) = featurize(family, s).transpose();
    }
    return m;
}

std::string describe(const PovmFamily& family, const PovmSetting& s) {
    switch (family.kind) {
        case FamilyKind::TripletPauli:
            return "site " + std::to_string(s.site) + " basis " +
                   std::string{qsim::axis_to_char(s.basis[0]),
                               qsim::axis_to_char(s.basis[1]),
                               qsim::axis_to_char(s.basis[2])};
        case FamilyKind::PeriodicString:
            return std::string{"string "} +
                   std::string{qsim::axis_to_char(s.basis[0]),
                               qsim::axis_to_char(s.basis[1]),
                               qsim::axis_to_char(s.basis[2])};
        case FamilyKind::HusimiGrid:
            return "alpha (" + std::to_string(s.alpha.real()) + ", " +
                   std::to_string(s.alpha.imag()) + ")";
    }
    return {};
}

}  // namespace qsel::povm
