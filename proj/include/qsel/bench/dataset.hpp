#pragma once

#include "qsel/bench/config.hpp"
#include "qsel/qsim/state.hpp"
#include "qsel/tgms/policy.hpp"

namespace qsel::bench {

struct StateEntry {
    int id = 0;
    nlohmann::json params;
    Eigen::VectorXd targets;        // empty for tomography states
    Eigen::VectorXcd amplitudes;    // tomography ground truth, else empty
    std::string split;              // "train" | "test"
};

// A generated dataset held in memory: every state with its targets plus the
// full per-setting outcome statistics, ready for training and evaluation.
struct Dataset {
    nlohmann::json meta;
    ExperimentConfig config;
    povm::PovmFamily family;
    std::vector<povm::PovmSetting> settings;
    Eigen::MatrixXd features;  // n_settings x feature_width
    std::vector<std::string> target_names;
    std::vector<StateEntry> states;
    std::vector<Eigen::MatrixXd> outcomes;  // per state: n_settings x width
    std::vector<int> train_ids, test_ids;

    int outcome_width() const { return int(outcomes.at(0).cols()); }
    int record_width() const {
        return int(features.cols()) + outcome_width();
    }

    // [feature | outcome] rows for the chosen settings of one state.
    Eigen::MatrixXd records_for(int state,
                                const std::vector<int>& thetas) const;
    Eigen::MatrixXd records_for(int state,
                                const std::vector<tgms::Record>& recs) const;

    qsim::StateVector tomography_state(int state) const;
    int target_dim() const { return int(target_names.size()); }
};

// Realizes the configured states, computes targets and all outcome
// statistics, and writes meta.json, states.jsonl and measurements.jsonl.
// Reruns with the same config are byte-identical.
void gen_data(const ExperimentConfig& config, const std::string& out_dir);

Dataset load_dataset(const std::string& dir);

}  // namespace qsel::bench
