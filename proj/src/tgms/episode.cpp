#include "qsel/tgms/episode.hpp"

#include "qsel/common/errors.hpp"
#include "qsel/common/rng.hpp"

namespace qsel::tgms {

std::vector<int> Trajectory::thetas() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const Record& r : steps) out.push_back(r.theta);
    return out;
}

Eigen::MatrixXd encode_povms_value(const PolicyModel& policy,
                                   const Eigen::MatrixXd& features) {
    return encode_povms(policy, features).value();
}

Trajectory run_episode(const PolicyModel& policy,
                       const Eigen::MatrixXd& encoded_settings,
                       const AcquireFn& acquire, const EpisodeOptions& opts) {
    const int n = int(encoded_settings.rows());
    if (opts.budget < 1 || opts.budget > n) {
        throw config_error("run_episode: budget exceeds family size");
    }

    Rng rng(opts.seed);
    Trajectory traj;
    traj.used.assign(n, false);
    const ad::Tensor h_enc = ad::Tensor::constant(encoded_settings);

    for (int t = 0; t < opts.budget; ++t) {
        const Eigen::VectorXd p =
            selection_distribution(policy, h_enc, traj.steps, traj.used)
                .value()
                .col(0);

        int theta;
        if (auto it = opts.forced.find(t); it != opts.forced.end()) {
            theta = it->second;
            if (theta < 0 || theta >= n || traj.used[theta]) {
                throw config_error("run_episode: forced setting invalid or used");
            }
        } else if (opts.mode == SelectMode::Argmax) {
            Eigen::Index best;
            p.maxCoeff(&best);
            theta = int(best);
        } else {
            std::discrete_distribution<int> dist(p.data(), p.data() + p.size());
            theta = dist(rng);
        }

        traj.steps.push_back({theta, acquire(theta)});
        traj.probs.push_back(p[theta]);
        traj.used[theta] = true;
    }
    return traj;
}

}  // namespace qsel::tgms
