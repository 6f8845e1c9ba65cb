#include "qsel/ad/checkpoint.hpp"

#include <fstream>

#include "qsel/common/errors.hpp"

namespace qsel::ad {

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("checkpoint: cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    if (doc.value("format", "") != "qsel-checkpoint-v1") {
        throw config_error("checkpoint: unrecognized format in " + path);
    }
    return doc;
}

}  // namespace

void save_checkpoint(const std::string& path, const ParamMap& params,
                     const nlohmann::json& metadata) {
    nlohmann::json doc;
    doc["format"] = "qsel-checkpoint-v1";
    doc["metadata"] = metadata;
    nlohmann::json tensors = nlohmann::json::object();
    for (const auto& [name, t] : params.items()) {
        const Matrix& v = t.value();
        std::vector<double> values;
        values.reserve(v.size());
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            for (Eigen::Index c = 0; c < v.cols(); ++c) {
                values.push_back(v(r, c));
            }
        }
        tensors[name] = {{"rows", v.rows()}, {"cols", v.cols()},
                         {"values", values}};
    }
    doc["tensors"] = std::move(tensors);
    std::ofstream out(path);
    if (!out) throw config_error("checkpoint: cannot write " + path);
    out << doc.dump() << "\n";
}

nlohmann::json load_checkpoint(const std::string& path, ParamMap& params) {
    nlohmann::json doc = parse_file(path);
    const auto& tensors = doc.at("tensors");
    for (auto& [name, t] : params.items()) {
        if (!tensors.contains(name)) {
            throw config_error("checkpoint: missing tensor '" + name + "'");
        }
        const auto& entry = tensors.at(name);
        const Eigen::Index rows = entry.at("rows").get<Eigen::Index>();
        const Eigen::Index cols = entry.at("cols").get<Eigen::Index>();
        if (rows != t.rows() || cols != t.cols()) {
            throw config_error("checkpoint: shape mismatch for '" + name + "'");
        }
        const auto& values = entry.at("values");
        Matrix& v = t.mutable_value();
        size_t k = 0;
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) {
                v(r, c) = values.at(k++).get<double>();
            }
        }
    }
    return doc.at("metadata");
}

nlohmann::json read_checkpoint_metadata(const std::string& path) {
    return parse_file(path).at("metadata");
}

}  // namespace qsel::ad
