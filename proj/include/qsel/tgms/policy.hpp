#pragma once

#include <cstdint>

#include "qsel/ad/layers.hpp"

namespace qsel::tgms {

struct PolicyConfig {
    int d_h = 64;
    int encoder_layers = 3;
    int heads = 4;
    int ff_dim = 128;
    int history_hidden = 64;
    double clip_c = 10.0;  // score = clip_c * tanh(<Wq h_x, Wk h_theta> / sqrt(d_h))
};

// One measurement record: the chosen setting and its outcome statistics.
struct Record {
    int theta = -1;
    Eigen::VectorXd outcome;
};

// Encoder over the setting family plus the pointer-style decoder pieces:
// a history MLP, a learned initial summary used before any data exists,
// and the bilinear compatibility scorer.
struct PolicyModel {
    PolicyConfig cfg;
    int feature_width = 0;
    int outcome_width = 0;
    std::uint64_t init_seed = 0;

    ad::ParamMap params;
    ad::Encoder encoder;
    ad::Mlp history_mlp;  // [d_h + outcome_width] -> d_h
    ad::Tensor h0;        // [1 x d_h]
    ad::Tensor wq, wk;    // [d_h x d_h]

    static PolicyModel create(const PolicyConfig& cfg, int feature_width,
                              int outcome_width, std::uint64_t seed);
};

// Latent vectors {h_theta}, one row per setting; permutation-equivariant
// (no positional encoding), computed once per family and reused.
ad::Tensor encode_povms(const PolicyModel& policy,
                        const Eigen::MatrixXd& features);

// h_x^{(t)}: the learned h0 when the history is empty, otherwise the mean of
// per-record MLP embeddings of [h_theta | outcome]; order-invariant.
ad::Tensor state_summary(const PolicyModel& policy, const ad::Tensor& h_enc,
                         const std::vector<Record>& history);

// Clipped tanh compatibility scores u(theta) as an [n x 1] column.
ad::Tensor selection_scores(const PolicyModel& policy, const ad::Tensor& h_x,
                            const ad::Tensor& h_enc);

// Masked softmax over unused settings; used entries get exactly zero.
ad::Tensor selection_distribution(const ad::Tensor& scores,
                                  const std::vector<bool>& used);

// Convenience: full pipeline from history to the selection distribution.
ad::Tensor selection_distribution(const PolicyModel& policy,
                                  const ad::Tensor& h_enc,
                                  const std::vector<Record>& history,
                                  const std::vector<bool>& used);

}  // namespace qsel::tgms
