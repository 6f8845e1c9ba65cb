#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsel/ad/tensor.hpp"
#include "qsel/common/rng.hpp"

namespace qsel::ad {

// Named parameter tensors, ordered by name so that optimizer sweeps and
// checkpoints are deterministic.
class ParamMap {
  public:
    Tensor add(const std::string& name, Matrix init);
    const Tensor& at(const std::string& name) const;
    bool contains(const std::string& name) const;
    const std::map<std::string, Tensor>& items() const { return items_; }
    std::map<std::string, Tensor>& items() { return items_; }
    void zero_grads();
    std::size_t size() const { return items_.size(); }

  private:
    std::map<std::string, Tensor> items_;
};

// Fan-in scaled uniform initialization, U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in,
                    Rng& rng);

}  // namespace qsel::ad
