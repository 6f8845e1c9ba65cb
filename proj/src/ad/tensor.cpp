#include "qsel/ad/tensor.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "qsel/common/errors.hpp"

namespace qsel::ad {

namespace {

using detail::Node;
using NodePtr = std::shared_ptr<Node>;

NodePtr fresh(Matrix value) {
    auto n = std::make_shared<Node>();
    n->value = std::move(value);
    return n;
}

bool wants_grad(const Tensor& t) { return t.node()->requires_grad; }

// Wires a result node: requires_grad is inherited from any parent, and the
// backward body only runs when some parent can use the gradient.
Tensor make_op(Matrix value, std::vector<Tensor> inputs,
               std::function<void(Node&)> backward_fn) {
    NodePtr n = fresh(std::move(value));
    for (const Tensor& t : inputs) {
        n->requires_grad = n->requires_grad || t.node()->requires_grad;
        n->parents.push_back(t.node());
    }
    if (n->requires_grad) n->backward_fn = std::move(backward_fn);
    return Tensor(std::move(n));
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw config_error(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

Tensor Tensor::constant(Matrix v) { return Tensor(fresh(std::move(v))); }

Tensor Tensor::parameter(Matrix v) {
    NodePtr n = fresh(std::move(v));
    n->requires_grad = true;
    return Tensor(std::move(n));
}

const Matrix& Tensor::grad() const {
    node_->ensure_grad();
    return node_->grad;
}

void Tensor::zero_grad() { node_->grad.setZero(node_->value.rows(), node_->value.cols()); }

double Tensor::scalar() const {
    if (rows() != 1 || cols() != 1) {
        throw config_error("Tensor::scalar: not a 1x1 tensor");
    }
    return node_->value(0, 0);
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.cols() != b.rows()) throw config_error("matmul: inner dims differ");
    Node* an = a.node().get();
    Node* bn = b.node().get();
    return make_op(a.value() * b.value(), {a, b}, [an, bn](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad.noalias() += self.grad * bn->value.transpose();
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            bn->grad.noalias() += an->value.transpose() * self.grad;
        }
    });
}

Tensor operator+(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "add");
    Node* an = a.node().get();
    Node* bn = b.node().get();
    return make_op(a.value() + b.value(), {a, b}, [an, bn](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad += self.grad;
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            bn->grad += self.grad;
        }
    });
}

Tensor operator-(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "sub");
    Node* an = a.node().get();
    Node* bn = b.node().get();
    return make_op(a.value() - b.value(), {a, b}, [an, bn](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad += self.grad;
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            bn->grad -= self.grad;
        }
    });
}

Tensor cwise_mul(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "cwise_mul");
    Node* an = a.node().get();
    Node* bn = b.node().get();
    return make_op(a.value().cwiseProduct(b.value()), {a, b}, [an, bn](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad += self.grad.cwiseProduct(bn->value);
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            bn->grad += self.grad.cwiseProduct(an->value);
        }
    });
}

Tensor scale(const Tensor& a, double c) {
    Node* an = a.node().get();
    return make_op(a.value() * c, {a}, [an, c](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad += c * self.grad;
        }
    });
}

Tensor add_row_broadcast(const Tensor& x, const Tensor& row) {
    if (row.rows() != 1 || row.cols() != x.cols()) {
        throw config_error("add_row_broadcast: row must be [1 x cols(x)]");
    }
    Node* xn = x.node().get();
    Node* rn = row.node().get();
    Matrix v = x.value();
    v.rowwise() += row.value().row(0);
    return make_op(std::move(v), {x, row}, [xn, rn](Node& self) {
        if (xn->requires_grad) {
            xn->ensure_grad();
            xn->grad += self.grad;
        }
        if (rn->requires_grad) {
            rn->ensure_grad();
            rn->grad.row(0) += self.grad.colwise().sum();
        }
    });
}

Tensor relu(const Tensor& a) {
    Node* an = a.node().get();
    return make_op(a.value().cwiseMax(0.0), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad += self.grad.cwiseProduct(
            (an->value.array() > 0.0).cast<double>().matrix());
    });
}

Tensor tanh_t(const Tensor& a) {
    Node* an = a.node().get();
    return make_op(a.value().array().tanh().matrix(), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad.array() +=
            self.grad.array() * (1.0 - self.value.array().square());
    });
}

Tensor transpose(const Tensor& a) {
    Node* an = a.node().get();
    return make_op(a.value().transpose(), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad += self.grad.transpose();
    });
}

Tensor row_mean(const Tensor& a) {
    Node* an = a.node().get();
    const double inv_n = 1.0 / double(a.rows());
    return make_op(a.value().colwise().mean(), {a}, [an, inv_n](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad += inv_n * self.grad.replicate(an->value.rows(), 1);
    });
}

Tensor sum_all(const Tensor& a) {
    Node* an = a.node().get();
    Matrix v(1, 1);
    v(0, 0) = a.value().sum();
    return make_op(std::move(v), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad.array() += self.grad(0, 0);
    });
}

Tensor mean_all(const Tensor& a) {
    return scale(sum_all(a), 1.0 / double(a.rows() * a.cols()));
}

Tensor square(const Tensor& a) {
    Node* an = a.node().get();
    return make_op(a.value().array().square().matrix(), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad += 2.0 * self.grad.cwiseProduct(an->value);
    });
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows()) throw config_error("concat_cols: row mismatch");
    Node* an = a.node().get();
    Node* bn = b.node().get();
    Matrix v(a.rows(), a.cols() + b.cols());
    v << a.value(), b.value();
    const Eigen::Index ac = a.cols();
    return make_op(std::move(v), {a, b}, [an, bn, ac](Node& self) {
        if (an->requires_grad) {
            an->ensure_grad();
            an->grad += self.grad.leftCols(ac);
        }
        if (bn->requires_grad) {
            bn->ensure_grad();
            bn->grad += self.grad.rightCols(self.value.cols() - ac);
        }
    });
}

Tensor vstack(const std::vector<Tensor>& rows) {
    if (rows.empty()) throw config_error("vstack: empty input");
    Eigen::Index total = 0;
    for (const Tensor& t : rows) {
        if (t.cols() != rows[0].cols()) {
            throw config_error("vstack: column mismatch");
        }
        total += t.rows();
    }
    Matrix v(total, rows[0].cols());
    Eigen::Index at = 0;
    std::vector<Node*> parents;
    std::vector<Eigen::Index> offsets;
    for (const Tensor& t : rows) {
        v.middleRows(at, t.rows()) = t.value();
        parents.push_back(t.node().get());
        offsets.push_back(at);
        at += t.rows();
    }
    return make_op(std::move(v), rows, [parents, offsets](Node& self) {
        for (size_t i = 0; i < parents.size(); ++i) {
            Node* p = parents[i];
            if (!p->requires_grad) continue;
            p->ensure_grad();
            p->grad += self.grad.middleRows(offsets[i], p->value.rows());
        }
    });
}

Tensor slice_cols(const Tensor& a, Eigen::Index start, Eigen::Index len) {
    if (start < 0 || start + len > a.cols()) {
        throw config_error("slice_cols: out of range");
    }
    Node* an = a.node().get();
    return make_op(a.value().middleCols(start, len), {a},
                   [an, start, len](Node& self) {
                       if (!an->requires_grad) return;
                       an->ensure_grad();
                       an->grad.middleCols(start, len) += self.grad;
                   });
}

Tensor gather_rows(const Tensor& a, const std::vector<Eigen::Index>& rows) {
    Matrix v(rows.size(), a.cols());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= a.rows()) {
            throw config_error("gather_rows: index out of range");
        }
        v.row(i) = a.value().row(rows[i]);
    }
    Node* an = a.node().get();
    return make_op(std::move(v), {a}, [an, rows](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        for (size_t i = 0; i < rows.size(); ++i) {
            an->grad.row(rows[i]) += self.grad.row(i);
        }
    });
}

Tensor pick(const Tensor& a, Eigen::Index i, Eigen::Index j) {
    if (i < 0 || i >= a.rows() || j < 0 || j >= a.cols()) {
        throw config_error("pick: index out of range");
    }
    Node* an = a.node().get();
    Matrix v(1, 1);
    v(0, 0) = a.value()(i, j);
    return make_op(std::move(v), {a}, [an, i, j](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        an->grad(i, j) += self.grad(0, 0);
    });
}

Tensor softmax_rows(const Tensor& a) {
    Matrix y = a.value();
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        Eigen::ArrayXd row = y.row(r).array();
        row -= row.maxCoeff();
        row = row.exp();
        y.row(r) = (row / row.sum()).matrix();
    }
    Node* an = a.node().get();
    return make_op(std::move(y), {a}, [an](Node& self) {
        if (!an->requires_grad) return;
        an->ensure_grad();
        for (Eigen::Index r = 0; r < self.value.rows(); ++r) {
            const auto y_r = self.value.row(r).array();
            const auto g_r = self.grad.row(r).array();
            const double dot = (g_r * y_r).sum();
            an->grad.row(r).array() += y_r * (g_r - dot);
        }
    });
}

Tensor masked_softmax(const Tensor& scores, const std::vector<bool>& valid) {
    if (scores.cols() != 1 ||
        size_t(scores.rows()) != valid.size()) {
        throw config_error("masked_softmax: scores must be [n x 1] with n masks");
    }
    double max_score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        if (valid[i]) max_score = std::max(max_score, scores.value()(i, 0));
    }
    if (!std::isfinite(max_score)) {
        throw config_error("masked_softmax: all entries masked");
    }
    Matrix y = Matrix::Zero(scores.rows(), 1);
    double total = 0.0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        if (!valid[i]) continue;
        y(i, 0) = std::exp(scores.value()(i, 0) - max_score);
        total += y(i, 0);
    }
    y /= total;
    Node* sn = scores.node().get();
    return make_op(std::move(y), {scores}, [sn, valid](Node& self) {
        if (!sn->requires_grad) return;
        sn->ensure_grad();
        double dot = 0.0;
        for (Eigen::Index i = 0; i < self.value.rows(); ++i) {
            if (valid[i]) dot += self.grad(i, 0) * self.value(i, 0);
        }
        for (Eigen::Index i = 0; i < self.value.rows(); ++i) {
            if (!valid[i]) continue;
            sn->grad(i, 0) += self.value(i, 0) * (self.grad(i, 0) - dot);
        }
    });
}

Tensor batch_norm_rows(const Tensor& x, const Tensor& gamma,
                       const Tensor& beta, double eps) {
    if (x.rows() < 2) {
        throw config_error("batch_norm_rows: needs at least 2 rows");
    }
    if (gamma.rows() != 1 || gamma.cols() != x.cols() || beta.rows() != 1 ||
        beta.cols() != x.cols()) {
        throw config_error("batch_norm_rows: scale/shift must be [1 x cols]");
    }
    Eigen::RowVectorXd mean = x.value().colwise().mean();
    Matrix centered = x.value().rowwise() - mean;
    Eigen::RowVectorXd var = centered.array().square().colwise().mean();
    Eigen::RowVectorXd inv_std = (var.array() + eps).rsqrt();
    Matrix xhat = centered * inv_std.asDiagonal();
    Matrix y = xhat * gamma.value().row(0).asDiagonal();
    y.rowwise() += beta.value().row(0);

    Node* xn = x.node().get();
    Node* gn = gamma.node().get();
    Node* bn = beta.node().get();
    // capture forward intermediates by value for the backward closure
    return make_op(std::move(y), {x, gamma, beta},
                   [xn, gn, bn, xhat, inv_std](Node& self) {
                       if (gn->requires_grad) {
                           gn->ensure_grad();
                           gn->grad.row(0) +=
                               self.grad.cwiseProduct(xhat).colwise().sum();
                       }
                       if (bn->requires_grad) {
                           bn->ensure_grad();
                           bn->grad.row(0) += self.grad.colwise().sum();
                       }
                       if (!xn->requires_grad) return;
                       xn->ensure_grad();
                       // dxhat = g * gamma; dx via the standard batch-norm pullback
                       Matrix dxhat =
                           self.grad * gn->value.row(0).asDiagonal();
                       Eigen::RowVectorXd mean_dxhat = dxhat.colwise().mean();
                       Eigen::RowVectorXd mean_dxhat_xhat =
                           dxhat.cwiseProduct(xhat).colwise().mean();
                       Matrix dx = dxhat;
                       dx.rowwise() -= mean_dxhat;
                       dx -= xhat * mean_dxhat_xhat.asDiagonal();
                       xn->grad += dx * inv_std.asDiagonal();
                   });
}

void backward(const Tensor& root) {
    if (root.rows() != 1 || root.cols() != 1) {
        throw config_error("backward: root must be scalar");
    }
    Node* root_node = root.node().get();
    if (!root_node->requires_grad) return;

    // reverse post-order of a DFS over parent edges = topological order
    std::vector<Node*> order;
    std::unordered_set<Node*> seen;
    std::vector<std::pair<Node*, size_t>> stack{{root_node, 0}};
    seen.insert(root_node);
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->parents.size()) {
            Node* p = node->parents[next++].get();
            if (p->requires_grad && !seen.count(p)) {
                seen.insert(p);
                stack.push_back({p, 0});
            }
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }

    root_node->ensure_grad();
    root_node->grad(0, 0) += 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if ((*it)->backward_fn) (*it)->backward_fn(**it);
    }
}

}  // namespace qsel::ad
