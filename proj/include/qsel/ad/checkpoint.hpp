#pragma once

#include <string>

#include <json.hpp>

#include "qsel/ad/params.hpp"

namespace qsel::ad {

// Checkpoint layout (JSON): format tag, caller metadata (must include the
// seed lineage), and per-tensor shape + row-major values.
void save_checkpoint(const std::string& path, const ParamMap& params,
                     const nlohmann::json& metadata);

// Fills an existing ParamMap by name, shape-checked; returns the metadata.
nlohmann::json load_checkpoint(const std::string& path, ParamMap& params);

// Metadata-only peek, used to rebuild a model before loading tensors.
nlohmann::json read_checkpoint_metadata(const std::string& path);

}  // namespace qsel::ad
