#include "qsel/ad/adam.hpp"

#include <cmath>

namespace qsel::ad {

void Adam::step(ParamMap& params) {
    ++t_;
    const double bc1 = 1.0 - std::pow(opts_.beta1, double(t_));
    const double bc2 = 1.0 - std::pow(opts_.beta2, double(t_));
    for (auto& [name, p] : params.items()) {
        const Matrix& g = p.grad();
        Slot& slot = slots_[name];
        if (slot.m.size() == 0) {
            slot.m = Matrix::Zero(g.rows(), g.cols());
            slot.v = Matrix::Zero(g.rows(), g.cols());
        }
        slot.m = opts_.beta1 * slot.m + (1.0 - opts_.beta1) * g;
        slot.v = opts_.beta2 * slot.v +
                 (1.0 - opts_.beta2) * g.cwiseProduct(g).eval();
        const Matrix m_hat = slot.m / bc1;
        const Matrix v_hat = slot.v / bc2;
        p.mutable_value().array() -=
            opts_.lr * m_hat.array() / (v_hat.array().sqrt() + opts_.eps);
    }
}

}  // namespace qsel::ad
