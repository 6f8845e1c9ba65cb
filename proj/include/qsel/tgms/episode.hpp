#pragma once

#include <functional>
#include <map>

#include "qsel/tgms/policy.hpp"

namespace qsel::tgms {

struct Trajectory {
    std::vector<Record> steps;
    std::vector<double> probs;  // selection probability of each chosen theta
    std::vector<bool> used;     // size = family size

    std::vector<int> thetas() const;
};

enum class SelectMode { Sample, Argmax };

struct EpisodeOptions {
    int budget = 10;
    SelectMode mode = SelectMode::Sample;
    std::uint64_t seed = 0;
    // caller-forced choices at given 0-based steps (manual POVM selection)
    std::map<int, int> forced;
};

using AcquireFn = std::function<Eigen::VectorXd(int theta)>;

// Rolls out one episode against a fixed (not graph-tracked) encoding.
// Produces `budget` pairwise-distinct settings; deterministic in Argmax mode
// and under a fixed seed in Sample mode.
Trajectory run_episode(const PolicyModel& policy,
                       const Eigen::MatrixXd& encoded_settings,
                       const AcquireFn& acquire, const EpisodeOptions& opts);

// Plain-value encoding pass for evaluation-time rollouts.
Eigen::MatrixXd encode_povms_value(const PolicyModel& policy,
                                   const Eigen::MatrixXd& features);

}  // namespace qsel::tgms
