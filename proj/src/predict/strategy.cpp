#include "qsel/predict/strategy.hpp"

#include <algorithm>
#include <limits>

#include "qsel/common/errors.hpp"

namespace qsel::predict {

Eigen::VectorXd basis_bin_vector(const std::vector<int>& thetas) {
    if (thetas.empty()) {
        throw config_error("basis_bin_vector: empty sequence");
    }
    Eigen::VectorXd bins = Eigen::VectorXd::Zero(27);
    for (int theta : thetas) {
        if (theta < 0) throw config_error("basis_bin_vector: bad index");
        bins[theta % 27] += 1.0;  // basis triple index, sites ignored
    }
    return bins / bins.sum();
}

double strategy_correlation(double d, double d_min, double d_max) {
    if (d_max <= d_min) return 1.0;  // degenerate pool: all identical
    return std::clamp((d_max - d) / (d_max - d_min), 0.0, 1.0);
}

Eigen::MatrixXd strategy_correlation_matrix(
    const std::vector<Eigen::VectorXd>& bins) {
    const Eigen::Index n = Eigen::Index(bins.size());
    if (n < 2) throw config_error("strategy_correlation_matrix: need >= 2");
    Eigen::MatrixXd dist(n, n);
    double d_min = std::numeric_limits<double>::infinity();
    double d_max = -d_min;
    for (Eigen::Index i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = (bins[i] - bins[j]).norm();
            dist(i, j) = dist(j, i) = d;
            d_min = std::min(d_min, d);
            d_max = std::max(d_max, d);
        }
    }
    Eigen::MatrixXd corr(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        corr(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            corr(i, j) = corr(j, i) =
                strategy_correlation(dist(i, j), d_min, d_max);
        }
    }
    return corr;
}

}  // namespace qsel::predict
