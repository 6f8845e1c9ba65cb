#include "qsel/tgms/train.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "qsel/ad/adam.hpp"
#include "qsel/common/errors.hpp"

namespace qsel::tgms {

namespace {

struct WindowState {
    int t1 = 1, t2 = 5;
    size_t explicit_idx = 0;
    double best_val = std::numeric_limits<double>::infinity();
    int stale_epochs = 0;
};

void check_window(int t1, int t2, int k, int n_settings) {
    if (t1 < 1 || t2 < t1) throw config_error("train: bad window bounds");
    if (t2 > n_settings) {
        throw config_error("train: window end exceeds family size");
    }
    if (n_settings - t2 + 1 < k) {
        throw config_error(
            "train: K exceeds the settings remaining at the window end");
    }
}

WindowState initial_window(const WindowSchedule& s, int k, int n_settings) {
    WindowState w;
    if (!s.explicit_windows.empty()) {
        w.t1 = s.explicit_windows[0].first;
        w.t2 = s.explicit_windows[0].second;
    } else {
        w.t1 = 1;
        w.t2 = s.window;
    }
    check_window(w.t1, w.t2, k, n_settings);
    return w;
}

// Shift-on-plateau (or walk the explicit list). Returns true on a move.
bool advance_window(WindowState& w, const WindowSchedule& s, int k,
                    int n_settings) {
    if (!s.explicit_windows.empty()) {
        if (w.explicit_idx + 1 >= s.explicit_windows.size()) return false;
        ++w.explicit_idx;
        w.t1 = s.explicit_windows[w.explicit_idx].first;
        w.t2 = s.explicit_windows[w.explicit_idx].second;
        check_window(w.t1, w.t2, k, n_settings);
        return true;
    }
    const int cap = std::min(s.t2_max, n_settings - k + 1);
    if (w.t2 >= cap) return false;
    const int shift = s.effective_shift();
    w.t2 = std::min(w.t2 + shift, cap);
    w.t1 = std::max(1, w.t2 - s.window + 1);
    return true;
}

int sample_discrete(Eigen::VectorXd p, Rng& rng) {
    const double total = p.sum();
    if (!(total > 0.0)) {
        throw numerical_error("train: selection distribution has no mass");
    }
    std::discrete_distribution<int> dist(p.data(), p.data() + p.size());
    return dist(rng);
}

double entropy_of(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    }
    return h;
}

}  // namespace

TrainResult train_selector(PolicyModel& policy, const SelectionTask& task,
                           const std::vector<int>& train_states,
                           const std::vector<int>& val_states,
                           const TrainOptions& opts,
                           const std::function<void(const EpochMetrics&)>&
                               on_epoch) {
    if (opts.k_branches < 2) throw config_error("train: K >= 2 required");
    if (train_states.empty()) throw config_error("train: no training states");
    const int n = task.num_settings();

    Rng rng = substream(opts.seed, "selector-train");
    ad::Adam adam(ad::AdamOptions{.lr = opts.lr});
    WindowState window = initial_window(opts.schedule, opts.k_branches, n);

    const Eigen::MatrixXd& features = task.setting_features();
    TrainResult result;

    for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
        std::vector<int> order = train_states;
        std::shuffle(order.begin(), order.end(), rng);

        double surrogate_sum = 0.0;
        double entropy_sum = 0.0;
        long entropy_count = 0;
        long windowed_steps = 0;
        size_t batches = 0;

        for (size_t start = 0; start < order.size();
             start += size_t(opts.batch_size)) {
            const size_t stop =
                std::min(order.size(), start + size_t(opts.batch_size));
            policy.params.zero_grads();
            ad::Tensor h_enc = encode_povms(policy, features);
            std::vector<ad::Tensor> loss_terms;

            for (size_t si = start; si < stop; ++si) {
                const int state = order[si];
                std::vector<Record> history;
                std::vector<bool> used(n, false);

                for (int t = 1; t <= window.t2; ++t) {
                    ad::Tensor h_x = state_summary(policy, h_enc, history);
                    ad::Tensor scores = selection_scores(policy, h_x, h_enc);
                    ad::Tensor probs = selection_distribution(scores, used);
                    const Eigen::VectorXd p = probs.value().col(0);
                    entropy_sum += entropy_of(p);
                    ++entropy_count;

                    if (t >= window.t1) {
                        // K distinct branches without replacement
                        Eigen::VectorXd remaining = p;
                        std::vector<int> branch;
                        std::vector<double> branch_loss;
                        for (int k = 0; k < opts.k_branches; ++k) {
                            const int theta = sample_discrete(remaining, rng);
                            remaining[theta] = 0.0;
                            branch.push_back(theta);
                            std::vector<Record> probe = history;
                            probe.push_back({theta, task.acquire(state, theta)});
                            branch_loss.push_back(
                                task.prediction_loss(state, probe));
                        }
                        ++windowed_steps;

                        if (opts.mode == LossMode::Advantage) {
                            const double mean_l =
                                std::accumulate(branch_loss.begin(),
                                                branch_loss.end(), 0.0) /
                                double(branch_loss.size());
                            for (size_t k = 0; k < branch.size(); ++k) {
                                loss_terms.push_back(ad::scale(
                                    ad::pick(probs, branch[k], 0),
                                    branch_loss[k] - mean_l));
                            }
                        } else {
                            for (size_t k = 0; k < branch.size(); ++k) {
                                loss_terms.push_back(ad::scale(
                                    ad::pick(scores, branch[k], 0),
                                    branch_loss[k]));
                            }
                        }
                        // the trajectory continues from branch k = 1
                        const int theta = branch[0];
                        history.push_back({theta, task.acquire(state, theta)});
                        used[theta] = true;
                    } else {
                        const int theta = sample_discrete(p, rng);
                        history.push_back({theta, task.acquire(state, theta)});
                        used[theta] = true;
                    }
                }
            }

            ad::Tensor batch_loss = ad::scale(
                ad::sum_all(ad::vstack(loss_terms)), 1.0 / double(stop - start));
            if (!std::isfinite(batch_loss.scalar())) {
                throw numerical_error("train: non-finite surrogate loss");
            }
            surrogate_sum += batch_loss.scalar();
            ++batches;
            ad::backward(batch_loss);
            adam.step(policy.params);
        }

        // validation: deterministic argmax rollouts at the window-end budget
        double val_sum = 0.0;
        if (!val_states.empty()) {
            const Eigen::MatrixXd enc = encode_povms_value(policy, features);
            for (int state : val_states) {
                EpisodeOptions eopts;
                eopts.budget = window.t2;
                eopts.mode = SelectMode::Argmax;
                Trajectory traj = run_episode(
                    policy, enc,
                    [&](int theta) { return task.acquire(state, theta); },
                    eopts);
                val_sum += task.prediction_loss(state, traj.steps);
            }
            val_sum /= double(val_states.size());
        }

        EpochMetrics metrics;
        metrics.epoch = epoch;
        metrics.t1 = window.t1;
        metrics.t2 = window.t2;
        metrics.surrogate = batches ? surrogate_sum / double(batches) : 0.0;
        metrics.val_loss = val_sum;
        metrics.mean_entropy =
            entropy_count ? entropy_sum / double(entropy_count) : 0.0;
        metrics.windowed_steps = windowed_steps;
        result.epochs.push_back(metrics);
        if (on_epoch) on_epoch(metrics);
        if (opts.verbose) {
            std::cerr << "[tgms] epoch " << epoch << " window [" << window.t1
                      << "," << window.t2 << "] surrogate " << metrics.surrogate
                      << " val " << metrics.val_loss << "\n";
        }

        // plateau detection drives the sliding window forward
        if (val_sum + opts.schedule.plateau_rel * std::abs(window.best_val) <
            window.best_val) {
            window.best_val = val_sum;
            window.stale_epochs = 0;
        } else if (++window.stale_epochs >= opts.schedule.plateau_epochs) {
            if (advance_window(window, opts.schedule, opts.k_branches, n)) {
                window.best_val = std::numeric_limits<double>::infinity();
            }
            window.stale_epochs = 0;
        }
    }
    return result;
}

}  // namespace qsel::tgms
