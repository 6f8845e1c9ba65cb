#include "qsel/qsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsel/common/errors.hpp"

namespace qsel::qsim {

namespace {

void check_sites(const std::vector<int>& keep, int n) {
    if (keep.empty()) {
        throw config_error("partial_trace: keep set must be nonempty");
    }
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || sorted.back() > n ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw config_error("partial_trace: keep sites out of range or repeated");
    }
}

// Builds the full-space basis index from a kept-subsystem index and an
// environment index. keep[0] is the most significant bit of the kept index.
struct IndexSplit {
    std::vector<Eigen::Index> keep_bit;  // full-space bit value per kept site
    std::vector<Eigen::Index> env_bit;

    IndexSplit(const std::vector<int>& keep, int n) {
        std::vector<bool> kept(n + 1, false);
        for (int s : keep) kept[s] = true;
        for (int s : keep) keep_bit.push_back(Eigen::Index{1} << (n - s));
        for (int s = 1; s <= n; ++s) {
            if (!kept[s]) env_bit.push_back(Eigen::Index{1} << (n - s));
        }
    }

    Eigen::Index compose(Eigen::Index k, Eigen::Index e) const {
        Eigen::Index j = 0;
        for (size_t t = 0; t < keep_bit.size(); ++t) {
            if (k & (Eigen::Index{1} << (keep_bit.size() - 1 - t))) {
                j |= keep_bit[t];
            }
        }
        for (size_t t = 0; t < env_bit.size(); ++t) {
            if (e & (Eigen::Index{1} << (env_bit.size() - 1 - t))) {
                j |= env_bit[t];
            }
        }
        return j;
    }
};

void check_block_args(const StateVector& psi, const std::vector<int>& block1,
                      const std::vector<int>& block2) {
    auto contiguous = [](const std::vector<int>& b) {
        for (size_t i = 1; i < b.size(); ++i) {
            if (b[i] != b[i - 1] + 1) return false;
        }
        return !b.empty();
    };
    if (!contiguous(block1) || !contiguous(block2)) {
        throw config_error("mbti: blocks must be nonempty contiguous site runs");
    }
    for (int s : block1) {
        if (std::find(block2.begin(), block2.end(), s) != block2.end()) {
            throw config_error("mbti: blocks overlap");
        }
    }
    if (block1.size() + block2.size() > 10) {
        throw guard_error("mbti: |I1|+|I2| > 10 exceeds the memory guard");
    }
    const int n = psi.qubits();
    for (int s : block1) {
        if (s < 1 || s > n) throw config_error("mbti: block site out of range");
    }
    for (int s : block2) {
        if (s < 1 || s > n) throw config_error("mbti: block site out of range");
    }
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
    if (rho.space.kind != SpaceKind::Qubits) {
        throw config_error("partial_trace: qubit spaces only");
    }
    const int n = rho.space.size;
    check_sites(keep, n);
    const IndexSplit split(keep, n);
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    const Eigen::Index de = Eigen::Index{1} << (n - keep.size());

    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r) {
        for (Eigen::Index c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (Eigen::Index e = 0; e < de; ++e) {
                acc += rho.entries(split.compose(r, e), split.compose(c, e));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix{std::move(out),
                         SpaceTag{SpaceKind::Qubits, int(keep.size())}};
}

DensityMatrix reduced_density(const StateVector& psi,
                              const std::vector<int>& keep) {
    if (psi.space.kind != SpaceKind::Qubits) {
        throw config_error("reduced_density: qubit spaces only");
    }
    const int n = psi.qubits();
    check_sites(keep, n);
    const IndexSplit split(keep, n);
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    const Eigen::Index de = Eigen::Index{1} << (n - keep.size());

    Matrix block(dk, de);
    for (Eigen::Index k = 0; k < dk; ++k) {
        for (Eigen::Index e = 0; e < de; ++e) {
            block(k, e) = psi.amplitudes[split.compose(k, e)];
        }
    }
    return DensityMatrix{block * block.adjoint(),
                         SpaceTag{SpaceKind::Qubits, int(keep.size())}};
}

double purity(const DensityMatrix& rho) { return rho.entries.squaredNorm(); }

double spin_correlation(const StateVector& psi, Axis axis, int j) {
    const int n = psi.qubits();
    if (j < 1 || j > n) {
        throw config_error("spin_correlation: site out of range");
    }
    if (j == 1) return 1.0;  // (sigma^a)^2 = identity
    return pauli_expectation(psi.amplitudes, n, {{1, axis}, {j, axis}});
}

double renyi2_entropy(const StateVector& psi, int cut) {
    const int n = psi.qubits();
    if (cut < 1 || cut > n - 1) {
        throw config_error("renyi2_entropy: cut must be in [1, N-1]");
    }
    std::vector<int> keep(cut);
    for (int i = 0; i < cut; ++i) keep[i] = i + 1;
    return -std::log2(purity(reduced_density(psi, keep)));
}

double string_order(const StateVector& psi) {
    const int n = psi.qubits();
    if (n % 2 == 0) {
        throw config_error("string_order: defined for odd N only");
    }
    std::vector<std::pair<int, Axis>> factors{{1, Axis::Z}};
    for (int s = 2; s <= n - 1; s += 2) factors.push_back({s, Axis::X});
    factors.push_back({n, Axis::Z});
    return pauli_expectation(psi.amplitudes, n, factors);
}

double mbti(const StateVector& psi, const std::vector<int>& block1,
            const std::vector<int>& block2) {
    check_block_args(psi, block1, block2);

    std::vector<int> joint = block1;
    joint.insert(joint.end(), block2.begin(), block2.end());
    const DensityMatrix rho_i = reduced_density(psi, joint);
    const Eigen::Index d1 = Eigen::Index{1} << block1.size();
    const Eigen::Index d2 = Eigen::Index{1} << block2.size();

    // partial transpose on the block-1 factor
    Matrix rho_t1(d1 * d2, d1 * d2);
    for (Eigen::Index a1 = 0; a1 < d1; ++a1) {
        for (Eigen::Index a2 = 0; a2 < d2; ++a2) {
            for (Eigen::Index b1 = 0; b1 < d1; ++b1) {
                for (Eigen::Index b2 = 0; b2 < d2; ++b2) {
                    rho_t1(b1 * d2 + a2, a1 * d2 + b2) =
                        rho_i.entries(a1 * d2 + a2, b1 * d2 + b2);
                }
            }
        }
    }

    Matrix u_block = Matrix::Identity(1, 1);
    for (size_t i = 0; i < block1.size(); ++i) {
        u_block = Eigen::kroneckerProduct(u_block, pauli_matrix(Axis::Y)).eval();
    }
    Matrix u = Eigen::kroneckerProduct(u_block, Matrix::Identity(d2, d2));

    const Complex numerator = (rho_i.entries * u * rho_t1 * u.adjoint()).trace();
    const double p1 = purity(reduced_density(psi, block1));
    const double p2 = purity(reduced_density(psi, block2));
    const double denom = std::pow(0.5 * (p1 + p2), 1.5);
    return numerator.real() / denom;
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
    if (rho.space != psi.space) {
        throw config_error("fidelity: state and density matrix spaces differ");
    }
    return (psi.amplitudes.adjoint() * rho.entries * psi.amplitudes)(0).real();
}

}  // namespace qsel::qsim
