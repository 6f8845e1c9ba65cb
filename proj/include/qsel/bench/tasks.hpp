#pragma once

#include <memory>

#include "qsel/bench/dataset.hpp"
#include "qsel/predict/imle.hpp"
#include "qsel/predict/regressor.hpp"
#include "qsel/tgms/task.hpp"

namespace qsel::bench {

// Property prediction against a frozen deep-set regressor.
class PropertyTask final : public tgms::SelectionTask {
  public:
    PropertyTask(const Dataset& data, const predict::PredictorModel& model);

    const Eigen::MatrixXd& setting_features() const override;
    int outcome_width() const override;
    int num_states() const override;
    Eigen::VectorXd acquire(int state, int theta) const override;
    double prediction_loss(int state,
                           const std::vector<tgms::Record>& records) const override;

    Eigen::VectorXd predict(const std::vector<tgms::Record>& records,
                            Eigen::VectorXd* latent = nullptr) const;
    // unweighted per-state RMSE over the target vector (evaluation metric)
    double rmse(int state, const std::vector<tgms::Record>& records) const;

  private:
    const Dataset& data_;
    const predict::PredictorModel& model_;
};

// Tomography against iterative MLE; the selector trains against a cheaper
// iteration cap, evaluation uses the full one.
class TomographyTask final : public tgms::SelectionTask {
  public:
    TomographyTask(const Dataset& data, predict::ImleOptions eval_opts,
                   int train_max_iter);

    const Eigen::MatrixXd& setting_features() const override;
    int outcome_width() const override;
    int num_states() const override;
    Eigen::VectorXd acquire(int state, int theta) const override;
    // squared Frobenius distance |rho_true - rho_hat|_F^2 (training feedback)
    double prediction_loss(int state,
                           const std::vector<tgms::Record>& records) const override;

    predict::TomographyResult reconstruct(
        int state, const std::vector<tgms::Record>& records,
        bool full_quality) const;
    double fidelity(int state, const std::vector<tgms::Record>& records) const;

  private:
    const Dataset& data_;
    predict::ImleOptions eval_opts_;
    predict::ImleOptions train_opts_;
};

}  // namespace qsel::bench
