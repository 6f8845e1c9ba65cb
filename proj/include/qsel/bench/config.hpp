#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qsel/povm/povm.hpp"
#include "qsel/predict/imle.hpp"
#include "qsel/predict/regressor.hpp"
#include "qsel/tgms/train.hpp"

namespace qsel::bench {

enum class Task {
    ClusterIsingOpen,
    ClusterIsingRing,
    PeriodicString,
    Xxz,
    XxzPerturbed,
    CatTomography,
};

std::string task_name(Task t);
Task task_from_name(const std::string& name);

// One experiment, fully described: physical family and sampling ranges,
// measurement family, model hyperparameters, budgets and seeds. Everything
// an emitted artifact needs to be reproduced bit-identically.
struct ExperimentConfig {
    Task task = Task::ClusterIsingOpen;
    std::uint64_t seed = 20240809;
    int n_qubits = 9;
    int num_states = 200;
    double split_train_fraction = 0.8;
    long shots = 0;  // 0 = exact Born statistics

    // cluster-Ising sampling ranges
    double h1_min = 0.0, h1_max = 1.6;
    double h2_min = -1.6, h2_max = 1.6;

    // bond-alternating XXZ sampling
    double xxz_j = 1.0;
    double jp_min = 0.1, jp_max = 3.0;
    double delta_min = 0.0, delta_max = 3.0;
    double xxz_b = 0.0;  // perturbation strength (0.1 for the perturbed task)
    int mbti_block = 2;  // block length of I1 and I2 around the chain center

    // cat-state sampling region |alpha - center| <= radius
    double cat_center_re = -1.5, cat_center_im = 0.0;
    double cat_radius = 1.0;
    int d_trunc = 16;

    // predictor hyperparameters
    int predictor_embed_hidden = 128;
    int predictor_latent = 64;
    int predictor_head_hidden = 64;
    predict::PredictorTrainOptions predictor_train;

    // selector hyperparameters
    tgms::PolicyConfig policy;
    tgms::TrainOptions selector_train;

    // tomography reconstruction
    predict::ImleOptions imle;
    int imle_train_max_iter = 150;  // cheaper f(.) during selector training

    // evaluation
    std::vector<int> budgets;
    int eval_seeds = 20;
    int hist_budget = 10;
    int corr_states = 12;

    static ExperimentConfig from_json(const nlohmann::json& doc);
    static ExperimentConfig load(const std::string& path,
                                 const std::vector<std::string>& overrides = {});
    nlohmann::json to_json() const;
    std::uint64_t hash() const;

    povm::PovmFamily family() const;
    bool is_tomography() const { return task == Task::CatTomography; }
};

// "key.path=value" overrides applied to a JSON document before parsing;
// values are parsed as JSON when possible, else taken as strings.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace qsel::bench
