#pragma once

#include "qsel/ad/params.hpp"

namespace qsel::ad {

struct AdamOptions {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Standard bias-corrected moment-tracking optimizer. State is keyed by
// parameter name; steps are deterministic functions of the gradients seen.
class Adam {
  public:
    explicit Adam(AdamOptions opts = {}) : opts_(opts) {}

    AdamOptions& options() { return opts_; }
    void step(ParamMap& params);
    long steps_taken() const { return t_; }

  private:
    struct Slot {
        Matrix m, v;
    };
    AdamOptions opts_;
    std::map<std::string, Slot> slots_;
    long t_ = 0;
};

}  // namespace qsel::ad
