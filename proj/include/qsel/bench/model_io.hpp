#pragma once

#include <string>

#include "qsel/bench/dataset.hpp"
#include "qsel/predict/regressor.hpp"
#include "qsel/tgms/policy.hpp"

namespace qsel::bench {

// Checkpoint wrappers that carry enough metadata (architecture, widths,
// seed lineage, source config hash) to rebuild the model before loading.
void save_policy(const std::string& path, const tgms::PolicyModel& policy,
                 const nlohmann::json& extra = {});
tgms::PolicyModel load_policy(const std::string& path);

void save_predictor(const std::string& path,
                    const predict::PredictorModel& model,
                    const nlohmann::json& extra = {});
predict::PredictorModel load_predictor(const std::string& path);

}  // namespace qsel::bench
