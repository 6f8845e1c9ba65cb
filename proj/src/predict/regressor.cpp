#include "qsel/predict/regressor.hpp"

#include <algorithm>
#include <numeric>

#include "qsel/ad/adam.hpp"
#include "qsel/common/errors.hpp"

namespace qsel::predict {

PredictorModel PredictorModel::create(RegressorConfig cfg, std::uint64_t seed) {
    if (cfg.record_width < 1 || cfg.target_dim < 1) {
        throw config_error("PredictorModel: record/target widths required");
    }
    if (cfg.blocks.empty()) {
        cfg.blocks.push_back({"all", 0, cfg.target_dim, 1.0});
    }
    for (const TargetBlock& b : cfg.blocks) {
        if (b.offset < 0 || b.length < 1 ||
            b.offset + b.length > cfg.target_dim) {
            throw config_error("PredictorModel: bad target block layout");
        }
    }

    PredictorModel m;
    m.cfg = std::move(cfg);
    m.init_seed = seed;
    Rng rng = substream(seed, "predictor-init");
    m.embed = ad::make_mlp(
        m.params, "embed",
        {m.cfg.record_width, m.cfg.embed_hidden, m.cfg.latent_dim}, rng);
    m.head = ad::make_mlp(m.params, "head",
                          {m.cfg.latent_dim, m.cfg.head_hidden, m.cfg.target_dim},
                          rng);
    return m;
}

ad::Tensor predict_tensor(const PredictorModel& model,
                          const Eigen::MatrixXd& records) {
    if (records.rows() < 1 || records.cols() != model.cfg.record_width) {
        throw config_error("predict: record matrix width mismatch");
    }
    ad::Tensor pooled = ad::row_mean(
        ad::apply(model.embed, ad::Tensor::constant(records)));
    return ad::apply(model.head, pooled);
}

Eigen::VectorXd predict_properties(const PredictorModel& model,
                                   const Eigen::MatrixXd& records,
                                   Eigen::VectorXd* latent) {
    if (records.rows() < 1 || records.cols() != model.cfg.record_width) {
        throw config_error("predict: record matrix width mismatch");
    }
    ad::Tensor pooled = ad::row_mean(
        ad::apply(model.embed, ad::Tensor::constant(records)));
    if (latent) *latent = pooled.value().row(0).transpose();
    return ad::apply(model.head, pooled).value().row(0).transpose();
}

double weighted_squared_error(const RegressorConfig& cfg,
                              const Eigen::VectorXd& y,
                              const Eigen::VectorXd& y_hat) {
    double total = 0.0;
    for (const TargetBlock& b : cfg.blocks) {
        total += b.weight *
                 (y.segment(b.offset, b.length) -
                  y_hat.segment(b.offset, b.length))
                     .squaredNorm();
    }
    return total;
}

PredictorTrainMetrics train_predictor(
    PredictorModel& model, const std::vector<Eigen::MatrixXd>& state_records,
    const std::vector<Eigen::VectorXd>& targets,
    const std::vector<int>& train_states, const PredictorTrainOptions& opts) {
    if (state_records.empty() || state_records.size() != targets.size()) {
        throw config_error("train_predictor: empty or mismatched dataset");
    }
    if (train_states.empty()) {
        throw config_error("train_predictor: no training states");
    }

    // per-block weight vector used inside the squared-error graph
    Eigen::RowVectorXd weights =
        Eigen::RowVectorXd::Ones(model.cfg.target_dim);
    for (const TargetBlock& b : model.cfg.blocks) {
        weights.segment(b.offset, b.length).setConstant(b.weight);
    }

    Rng rng = substream(opts.seed, "predictor-train");
    ad::Adam adam(ad::AdamOptions{.lr = opts.lr});
    PredictorTrainMetrics metrics;

    const int n_settings = int(state_records[0].rows());
    const int max_records = std::min(opts.max_records, n_settings);
    std::uniform_int_distribution<int> len_dist(opts.min_records, max_records);

    for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
        std::vector<int> order = train_states;
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        size_t batches = 0;

        for (size_t start = 0; start < order.size();
             start += size_t(opts.batch_size)) {
            const size_t stop =
                std::min(order.size(), start + size_t(opts.batch_size));
            model.params.zero_grads();
            std::vector<ad::Tensor> terms;

            for (size_t si = start; si < stop; ++si) {
                const int state = order[si];
                const int len = len_dist(rng);
                std::vector<int> all(n_settings);
                std::iota(all.begin(), all.end(), 0);
                std::shuffle(all.begin(), all.end(), rng);

                Eigen::MatrixXd records(len, model.cfg.record_width);
                for (int r = 0; r < len; ++r) {
                    records.row(r) = state_records[state].row(all[r]);
                }
                ad::Tensor err =
                    predict_tensor(model, records) -
                    ad::Tensor::constant(targets[state].transpose());
                ad::Tensor weighted = ad::cwise_mul(
                    ad::square(err), ad::Tensor::constant(weights));
                terms.push_back(ad::sum_all(weighted));
            }

            ad::Tensor loss = ad::scale(ad::sum_all(ad::vstack(terms)),
                                        1.0 / double(stop - start));
            if (!std::isfinite(loss.scalar())) {
                throw numerical_error("train_predictor: non-finite loss");
            }
            epoch_loss += loss.scalar();
            ++batches;
            ad::backward(loss);
            adam.step(model.params);
        }
        metrics.epoch_loss.push_back(epoch_loss / double(batches));
    }
    return metrics;
}

}  // namespace qsel::predict
