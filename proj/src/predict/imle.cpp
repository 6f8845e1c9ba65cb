#include "qsel/predict/imle.hpp"

#include <cmath>

#include "qsel/common/errors.hpp"
#include "qsel/qsim/fock.hpp"

namespace qsel::predict {

namespace {

using qsim::Complex;
using qsim::Matrix;
using qsim::Vector;

double log_likelihood(const Eigen::VectorXd& data, const Eigen::VectorXd& probs) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        ll += data[i] * std::log(probs[i]);
    }
    return ll;
}

}  // namespace

TomographyResult imle_reconstruct(
    const std::vector<std::pair<Complex, double>>& points, int d_trunc,
    const ImleOptions& opts) {
    if (points.empty()) throw config_error("imle: empty point set");
    if (d_trunc < 2) throw config_error("imle: d_trunc >= 2 required");
    for (const auto& [alpha, d] : points) {
        if (d < 0.0 || d > 1.0) {
            throw config_error("imle: data values must lie in [0, 1]");
        }
    }

    const Eigen::Index m = Eigen::Index(points.size());
    Matrix projections(d_trunc, m);  // column i = |alpha_i> (truncated, unit)
    Eigen::VectorXd data(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        projections.col(i) =
            qsim::coherent_state(points[i].first, d_trunc).amplitudes;
        data[i] = points[i].second;
    }

    TomographyResult result;
    Matrix rho = Matrix::Identity(d_trunc, d_trunc) / double(d_trunc);

    auto probs_of = [&](const Matrix& state) {
        Eigen::VectorXd p(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double raw =
                (projections.col(i).adjoint() * state * projections.col(i))(0)
                    .real();
            if (raw < opts.prob_floor) {
                p[i] = opts.prob_floor;
                ++result.clamp_events;
            } else {
                p[i] = raw;
            }
        }
        return p;
    };

    Eigen::VectorXd probs = probs_of(rho);
    double ll = log_likelihood(data, probs);
    result.log_likelihood.push_back(ll);

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        // R(rho) = V diag(d_i / p_i) V^dag
        Eigen::VectorXd ratio = data.cwiseQuotient(probs);
        Matrix r = projections * ratio.asDiagonal() * projections.adjoint();

        double eps = opts.epsilon;
        Matrix candidate;
        Eigen::VectorXd cand_probs;
        double cand_ll = -std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Matrix g = (1.0 - eps) * Matrix::Identity(d_trunc, d_trunc) +
                       eps * r;
            candidate = g * rho * g.adjoint();
            candidate /= candidate.trace().real();
            candidate = 0.5 * (candidate + candidate.adjoint()).eval();
            cand_probs = probs_of(candidate);
            cand_ll = log_likelihood(data, cand_probs);
            if (cand_ll >= ll - 1e-12) {
                accepted = true;
                break;
            }
            eps *= 0.5;  // dilute harder and retry
            ++result.step_rejections;
        }
        if (!accepted) break;  // no improving step found at any dilution

        const double gain = cand_ll - ll;
        rho = std::move(candidate);
        probs = std::move(cand_probs);
        ll = cand_ll;
        result.log_likelihood.push_back(ll);
        ++result.iterations;
        if (gain < opts.tol && iter > 0) break;
    }

    result.rho_hat =
        qsim::DensityMatrix{rho, qsim::SpaceTag{qsim::SpaceKind::Fock, d_trunc}};
    return result;
}

}  // namespace qsel::predict
