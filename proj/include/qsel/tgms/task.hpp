#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qsel/tgms/policy.hpp"

namespace qsel::tgms {

// What the selector needs from a learning problem: the featurized setting
// family, a way to acquire outcome statistics for (state, setting), and the
// frozen prediction algorithm's squared error |y - f(d)|^2 on a record set.
// Implementations must be pure per call so episodes can run concurrently.
class SelectionTask {
  public:
    virtual ~SelectionTask() = default;

    virtual const Eigen::MatrixXd& setting_features() const = 0;
    virtual int outcome_width() const = 0;
    virtual int num_states() const = 0;
    virtual Eigen::VectorXd acquire(int state, int theta) const = 0;
    virtual double prediction_loss(int state,
                                   const std::vector<Record>& records) const = 0;

    int num_settings() const { return int(setting_features().rows()); }
};

}  // namespace qsel::tgms
