#include "qsel/ad/params.hpp"

#include <cmath>

#include "qsel/common/errors.hpp"

namespace qsel::ad {

Tensor ParamMap::add(const std::string& name, Matrix init) {
    if (items_.count(name)) {
        throw config_error("ParamMap: duplicate parameter '" + name + "'");
    }
    Tensor t = Tensor::parameter(std::move(init));
    items_.emplace(name, t);
    return t;
}

const Tensor& ParamMap::at(const std::string& name) const {
    auto it = items_.find(name);
    if (it == items_.end()) {
        throw config_error("ParamMap: unknown parameter '" + name + "'");
    }
    return it->second;
}

bool ParamMap::contains(const std::string& name) const {
    return items_.count(name) > 0;
}

void ParamMap::zero_grads() {
    for (auto& [name, t] : items_) t.zero_grad();
}

Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in,
                    Rng& rng) {
    const double bound = 1.0 / std::sqrt(double(std::max<Eigen::Index>(fan_in, 1)));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = dist(rng);
    }
    return m;
}

}  // namespace qsel::ad
