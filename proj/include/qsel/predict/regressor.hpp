#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsel/ad/layers.hpp"

namespace qsel::predict {

// Weighted target blocks let one model regress several property groups
// (correlations, entropies, order parameters) with per-task loss weights.
struct TargetBlock {
    std::string name;
    int offset = 0;
    int length = 0;
    double weight = 1.0;
};

struct RegressorConfig {
    int record_width = 0;  // featurization width + outcome width
    int target_dim = 0;
    int embed_hidden = 128;
    int latent_dim = 64;
    int head_hidden = 64;
    std::vector<TargetBlock> blocks;  // defaults to one full-width block
};

// Mean-pooled deep-set regressor: per-record embedding MLP, order-invariant
// mean pooling, and an output head. The pooled vector doubles as the latent
// representation exported for external 2-D projection.
struct PredictorModel {
    RegressorConfig cfg;
    std::uint64_t init_seed = 0;
    ad::ParamMap params;
    ad::Mlp embed;  // record_width -> embed_hidden -> latent_dim
    ad::Mlp head;   // latent_dim -> head_hidden -> target_dim

    static PredictorModel create(RegressorConfig cfg, std::uint64_t seed);
};

// Graph-building forward over a [t x record_width] record matrix.
ad::Tensor predict_tensor(const PredictorModel& model,
                          const Eigen::MatrixXd& records);

// Value-only forward; optionally exports the pooled latent vector.
Eigen::VectorXd predict_properties(const PredictorModel& model,
                                   const Eigen::MatrixXd& records,
                                   Eigen::VectorXd* latent = nullptr);

// Block-weighted squared error used for both training and selector feedback.
double weighted_squared_error(const RegressorConfig& cfg,
                              const Eigen::VectorXd& y,
                              const Eigen::VectorXd& y_hat);

struct PredictorTrainOptions {
    int epochs = 400;
    int batch_size = 32;
    double lr = 1e-3;
    std::uint64_t seed = 0;
    int min_records = 1;
    int max_records = 30;
};

struct PredictorTrainMetrics {
    std::vector<double> epoch_loss;
};

// Trains on random measurement subsets of each state (subset lengths drawn
// uniformly from [min_records, max_records]). The returned model is treated
// as frozen by downstream selector training.
PredictorTrainMetrics train_predictor(
    PredictorModel& model, const std::vector<Eigen::MatrixXd>& state_records,
    const std::vector<Eigen::VectorXd>& targets,
    const std::vector<int>& train_states, const PredictorTrainOptions& opts);

}  // namespace qsel::predict
