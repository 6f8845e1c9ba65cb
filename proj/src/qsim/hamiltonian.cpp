#include "qsel/qsim/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qsel/common/errors.hpp"
#include "qsel/common/rng.hpp"

namespace qsel::qsim {

namespace {

constexpr int kMaxQubits = 14;      // dense-memory guard
constexpr int kDenseDimLimit = 2048; // full spectrum below, Lanczos above
constexpr double kDegenerateGap = 1e-10;

void validate(const HamiltonianSpec& spec) {
    if (spec.n_qubits < 3) {
        throw config_error("hamiltonian: N >= 3 required");
    }
    if (spec.n_qubits > kMaxQubits) {
        throw guard_error("hamiltonian: N > 14 exceeds the dense-memory guard");
    }
    for (double c : {spec.h1, spec.h2, spec.j, spec.jp, spec.delta, spec.b}) {
        if (!std::isfinite(c)) {
            throw config_error("hamiltonian: non-finite coupling");
        }
    }
    if (spec.model == Model::Xxz && spec.n_qubits % 2 != 0) {
        throw config_error("hamiltonian: XXZ requires even N");
    }
}

int wrap_site(int site, int n) { return (site - 1) % n + 1; }

StateVector canonical_phase(Vector v, int n_qubits) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double mag = std::abs(v[i]);
        if (mag > 1e-8) {
            v *= std::conj(v[i]) / mag;
            break;
        }
    }
    return qubit_state(std::move(v), n_qubits);
}

int qubits_from_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    if ((Eigen::Index{1} << n) != dim) {
        throw config_error("ground_state: dimension is not a power of two");
    }
    return n;
}

// One Lanczos sweep with full reorthogonalization. When `deflate` is given,
// the iteration runs in its orthogonal complement, so the lowest Ritz value
// is the smallest eigenvalue there.
double lanczos_lowest(const Matrix& h, Rng& rng, int max_iter, double tol,
                      const Vector* deflate, Vector* eigvec) {
    const Eigen::Index dim = h.rows();
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    if (deflate) v -= (*deflate) * deflate->dot(v);
    v.normalize();

    std::vector<Vector> basis;
    std::vector<double> alphas, betas;
    double theta = 0.0, theta_prev = 1e300;
    Eigen::VectorXd ritz;

    for (int k = 0; k < max_iter && k < dim; ++k) {
        basis.push_back(v);
        Vector w = h * v;
        if (deflate) w -= (*deflate) * deflate->dot(w);
        double alpha = v.dot(w).real();
        alphas.push_back(alpha);
        w -= alpha * v;
        if (k > 0) w -= betas.back() * basis[k - 1];
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& b : basis) w -= b * b.dot(w);
        }
        double beta = w.norm();

        bool exhausted = beta < 1e-13;
        if (exhausted || k + 1 == max_iter || k + 1 == dim || (k > 0 && k % 8 == 0)) {
            Eigen::VectorXd diag =
                Eigen::Map<const Eigen::VectorXd>(alphas.data(), alphas.size());
            Eigen::VectorXd sub(std::max<size_t>(betas.size(), 1));
            for (size_t i = 0; i < betas.size(); ++i) sub[i] = betas[i];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub.head(alphas.size() - 1));
            theta = es.eigenvalues()[0];
            ritz = es.eigenvectors().col(0);
            double scale = std::max(1.0, std::abs(theta));
            double residual = beta * std::abs(ritz[ritz.size() - 1]);
            if (exhausted ||
                (std::abs(theta - theta_prev) < tol * scale && residual < 1e-8 * scale)) {
                break;
            }
            theta_prev = theta;
        }
        betas.push_back(beta);
        v = w / beta;
    }

    if (eigvec) {
        Vector x = Vector::Zero(dim);
        for (Eigen::Index i = 0; i < ritz.size(); ++i) x += ritz[i] * basis[i];
        x.normalize();
        *eigvec = std::move(x);
    }
    return theta;
}

}  // namespace

HamiltonianSpec HamiltonianSpec::cluster_ising_open(int n, double h1, double h2) {
    return HamiltonianSpec{Model::ClusterIsingOpen, n, h1, h2};
}

HamiltonianSpec HamiltonianSpec::cluster_ising_periodic(int n, double h1,
                                                        double h2) {
    return HamiltonianSpec{Model::ClusterIsingPeriodic, n, h1, h2};
}

HamiltonianSpec HamiltonianSpec::xxz(int n, double j, double jp, double delta,
                                     double b) {
    HamiltonianSpec spec;
    spec.model = Model::Xxz;
    spec.n_qubits = n;
    spec.j = j;
    spec.jp = jp;
    spec.delta = delta;
    spec.b = b;
    return spec;
}

std::vector<PauliTerm> hamiltonian_terms(const HamiltonianSpec& spec) {
    validate(spec);
    const int n = spec.n_qubits;
    std::vector<PauliTerm> terms;

    auto cluster = [&](bool periodic) {
        const int cluster_bonds = periodic ? n : n - 2;
        for (int i = 1; i <= cluster_bonds; ++i) {
            terms.push_back({{{i, Axis::Z},
                              {wrap_site(i + 1, n), Axis::X},
                              {wrap_site(i + 2, n), Axis::Z}},
                             -1.0});
        }
        if (spec.h1 != 0.0) {
            for (int i = 1; i <= n; ++i) {
                terms.push_back({{{i, Axis::X}}, -spec.h1});
            }
        }
        if (spec.h2 != 0.0) {
            const int ising_bonds = periodic ? n : n - 1;
            for (int i = 1; i <= ising_bonds; ++i) {
                terms.push_back({{{i, Axis::X}, {wrap_site(i + 1, n), Axis::X}},
                                 -spec.h2});
            }
        }
    };

    switch (spec.model) {
        case Model::ClusterIsingOpen: cluster(false); break;
        case Model::ClusterIsingPeriodic: cluster(true); break;
        case Model::Xxz: {
            auto bond = [&](int a, int b, double strength) {
                terms.push_back({{{a, Axis::X}, {b, Axis::X}}, strength});
                terms.push_back({{{a, Axis::Y}, {b, Axis::Y}}, strength});
                terms.push_back({{{a, Axis::Z}, {b, Axis::Z}},
                                 strength * spec.delta});
            };
            for (int i = 1; i <= n / 2; ++i) bond(2 * i - 1, 2 * i, spec.j);
            for (int i = 1; i <= n / 2 - 1; ++i) bond(2 * i, 2 * i + 1, spec.jp);
            if (spec.b != 0.0) {
                // perturbation acts on the open-chain bonds i = 1..N-1
                for (int i = 1; i < n; ++i) {
                    terms.push_back(
                        {{{i, Axis::X}, {i + 1, Axis::Z}}, spec.b});
                    terms.push_back(
                        {{{i, Axis::Z}, {i + 1, Axis::X}}, -spec.b});
                }
            }
            break;
        }
    }
    return terms;
}

Matrix build_hamiltonian(const HamiltonianSpec& spec) {
    const auto terms = hamiltonian_terms(spec);
    const Eigen::Index dim = Eigen::Index{1} << spec.n_qubits;
    Matrix h = Matrix::Zero(dim, dim);
    for (const PauliTerm& term : terms) {
        add_pauli_term(h, spec.n_qubits, term);
    }
    return h;
}

GroundState ground_state(const Matrix& h) {
    const Eigen::Index dim = h.rows();
    if (dim != h.cols()) {
        throw config_error("ground_state: matrix must be square");
    }
    const int n = qubits_from_dim(dim);

    GroundState result;
    if (dim <= kDenseDimLimit) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        result.energy = es.eigenvalues()[0];
        result.gap = es.eigenvalues()[1] - es.eigenvalues()[0];
        result.state = canonical_phase(es.eigenvectors().col(0), n);
    } else {
        Rng rng = substream(0xeda11ce5u, "lanczos");
        Vector ground;
        result.energy = lanczos_lowest(h, rng, 400, 1e-13, nullptr, &ground);
        // second eigenvalue from a deflated sweep; this also resolves exact
        // ground-space degeneracy, which single-vector Lanczos cannot see
        double second = lanczos_lowest(h, rng, 400, 1e-13, &ground, nullptr);
        result.gap = second - result.energy;
        result.state = canonical_phase(std::move(ground), n);
    }
    result.degenerate = result.gap < kDegenerateGap;
    return result;
}

GroundState ground_state(const HamiltonianSpec& spec) {
    return ground_state(build_hamiltonian(spec));
}

GroundState ground_state_lanczos(const Matrix& h, int max_iter, double tol) {
    const int n = qubits_from_dim(h.rows());
    Rng rng = substream(0xeda11ce5u, "lanczos");
    GroundState result;
    Vector ground;
    result.energy = lanczos_lowest(h, rng, max_iter, tol, nullptr, &ground);
    double second = lanczos_lowest(h, rng, max_iter, tol, &ground, nullptr);
    result.gap = second - result.energy;
    result.state = canonical_phase(std::move(ground), n);
    result.degenerate = result.gap < kDegenerateGap;
    return result;
}

}  // namespace qsel::qsim
