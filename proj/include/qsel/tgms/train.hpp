#pragma once

#include <optional>

#include "qsel/tgms/episode.hpp"
#include "qsel/tgms/task.hpp"

namespace qsel::tgms {

// Loss applied to the K one-step branches drawn at each windowed step.
//   Advantage:       sum_k p(theta_k) * (l_k - mean_k l)   [default]
//   LiteralUtility:  sum_k u(theta_k) * l_k                [paper-literal]
// Branch errors l_k are constants with respect to policy parameters.
enum class LossMode { Advantage, LiteralUtility };

struct WindowSchedule {
    int window = 5;          // steps counted per episode (T2 - T1 + 1)
    int shift = 0;           // 0 -> ceil(window / 2)
    int t2_max = 10;         // schedule stops advancing past this budget
    int plateau_epochs = 3;  // epochs without improvement before a shift
    double plateau_rel = 1e-3;
    // optional explicit [t1, t2] list; overrides shift-on-plateau
    std::vector<std::pair<int, int>> explicit_windows;

    int effective_shift() const {
        return shift > 0 ? shift : (window + 1) / 2;
    }
};

struct TrainOptions {
    int epochs = 40;
    int batch_size = 16;
    int k_branches = 6;
    LossMode mode = LossMode::Advantage;
    double lr = 1e-3;
    std::uint64_t seed = 0;
    WindowSchedule schedule;
    bool verbose = false;
};

struct EpochMetrics {
    int epoch = 0;
    int t1 = 1, t2 = 5;
    double surrogate = 0.0;       // mean windowed surrogate loss
    double val_loss = 0.0;        // mean prediction loss at budget t2
    double mean_entropy = 0.0;    // mean selection entropy over steps
    long windowed_steps = 0;      // loss-counted steps this epoch
};

struct TrainResult {
    std::vector<EpochMetrics> epochs;
};

// K-sample sliding-window training: at each windowed step, K distinct
// one-step branches are sampled without replacement (iterative
// renormalization), scored by the frozen predictor, and the trajectory
// continues from branch k = 1. Gradients flow only through the probability
// or utility factors.
TrainResult train_selector(PolicyModel& policy, const SelectionTask& task,
                           const std::vector<int>& train_states,
                           const std::vector<int>& val_states,
                           const TrainOptions& opts,
                           const std::function<void(const EpochMetrics&)>&
                               on_epoch = nullptr);

}  // namespace qsel::tgms
