#include "qsel/tgms/policy.hpp"

#include <cmath>

#include "qsel/common/errors.hpp"

namespace qsel::tgms {

PolicyModel PolicyModel::create(const PolicyConfig& cfg, int feature_width,
                                int outcome_width, std::uint64_t seed) {
    if (feature_width < 1 || outcome_width < 1) {
        throw config_error("PolicyModel: widths must be positive");
    }
    PolicyModel m;
    m.cfg = cfg;
    m.feature_width = feature_width;
    m.outcome_width = outcome_width;
    m.init_seed = seed;

    Rng rng = substream(seed, "policy-init");
    m.encoder = ad::make_encoder(m.params, "enc", feature_width, cfg.d_h,
                                 cfg.encoder_layers, cfg.heads, cfg.ff_dim, rng);
    m.history_mlp = ad::make_mlp(
        m.params, "dec.history",
        {cfg.d_h + outcome_width, cfg.history_hidden, cfg.d_h}, rng);
    m.h0 = m.params.add("dec.h0",
                        ad::uniform_init(1, cfg.d_h, cfg.d_h, rng));
    m.wq = m.params.add("dec.wq",
                        ad::uniform_init(cfg.d_h, cfg.d_h, cfg.d_h, rng));
    m.wk = m.params.add("dec.wk",
                        ad::uniform_init(cfg.d_h, cfg.d_h, cfg.d_h, rng));
    return m;
}

ad::Tensor encode_povms(const PolicyModel& policy,
                        const Eigen::MatrixXd& features) {
    if (features.rows() < 1 || features.cols() != policy.feature_width) {
        throw config_error("encode_povms: bad feature matrix");
    }
    return ad::apply(policy.encoder, ad::Tensor::constant(features));
}

ad::Tensor state_summary(const PolicyModel& policy, const ad::Tensor& h_enc,
                         const std::vector<Record>& history) {
    if (history.empty()) return policy.h0;

    Eigen::MatrixXd outcomes(history.size(), policy.outcome_width);
    std::vector<Eigen::Index> indices;
    indices.reserve(history.size());
    for (size_t i = 0; i < history.size(); ++i) {
        if (history[i].outcome.size() != policy.outcome_width) {
            throw config_error("state_summary: record width mismatch");
        }
        outcomes.row(i) = history[i].outcome.transpose();
        indices.push_back(history[i].theta);
    }
    ad::Tensor records = ad::concat_cols(ad::gather_rows(h_enc, indices),
                                         ad::Tensor::constant(outcomes));
    return ad::row_mean(ad::apply(policy.history_mlp, records));
}

ad::Tensor selection_scores(const PolicyModel& policy, const ad::Tensor& h_x,
                            const ad::Tensor& h_enc) {
    ad::Tensor q = ad::matmul(h_x, policy.wq);        // [1 x d]
    ad::Tensor k = ad::matmul(h_enc, policy.wk);      // [n x d]
    ad::Tensor z = ad::matmul(k, ad::transpose(q));   // [n x 1]
    const double inv_sqrt = 1.0 / std::sqrt(double(policy.cfg.d_h));
    return ad::scale(ad::tanh_t(ad::scale(z, inv_sqrt)), policy.cfg.clip_c);
}

ad::Tensor selection_distribution(const ad::Tensor& scores,
                                  const std::vector<bool>& used) {
    std::vector<bool> valid(used.size());
    for (size_t i = 0; i < used.size(); ++i) valid[i] = !used[i];
    return ad::masked_softmax(scores, valid);
}

ad::Tensor selection_distribution(const PolicyModel& policy,
                                  const ad::Tensor& h_enc,
                                  const std::vector<Record>& history,
                                  const std::vector<bool>& used) {
    ad::Tensor h_x = state_summary(policy, h_enc, history);
    return selection_distribution(selection_scores(policy, h_x, h_enc), used);
}

}  // namespace qsel::tgms
