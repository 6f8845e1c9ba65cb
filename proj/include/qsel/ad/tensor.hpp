#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

namespace qsel::ad {

using Matrix = Eigen::MatrixXd;

namespace detail {

struct Node {
    Matrix value;
    Matrix grad;  // allocated on first touch, same shape as value
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backward_fn;

    void ensure_grad() {
        if (grad.size() == 0) grad = Matrix::Zero(value.rows(), value.cols());
    }
};

}  // namespace detail

// Handle to one node of a reverse-mode computation graph over dense real
// matrices. Graphs are DAGs built by the free functions below; parameters
// are leaf nodes that persist across graphs and accumulate gradients.
class Tensor {
  public:
    Tensor() = default;
    explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

    static Tensor constant(Matrix v);
    static Tensor parameter(Matrix v);

    bool defined() const { return static_cast<bool>(node_); }
    const Matrix& value() const { return node_->value; }
    Matrix& mutable_value() { return node_->value; }
    const Matrix& grad() const;
    void zero_grad();
    bool requires_grad() const { return node_->requires_grad; }
    Eigen::Index rows() const { return node_->value.rows(); }
    Eigen::Index cols() const { return node_->value.cols(); }
    double scalar() const;

    const std::shared_ptr<detail::Node>& node() const { return node_; }

  private:
    std::shared_ptr<detail::Node> node_;
};

// --- graph-building free functions -----------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor cwise_mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
// x [n x c] plus a broadcast row [1 x c]
Tensor add_row_broadcast(const Tensor& x, const Tensor& row);
Tensor relu(const Tensor& a);
Tensor tanh_t(const Tensor& a);
Tensor transpose(const Tensor& a);
Tensor row_mean(const Tensor& a);  // [n x c] -> [1 x c]
Tensor sum_all(const Tensor& a);   // -> [1 x 1]
Tensor mean_all(const Tensor& a);  // -> [1 x 1]
Tensor square(const Tensor& a);
Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor vstack(const std::vector<Tensor>& rows);  // equal-width blocks
Tensor slice_cols(const Tensor& a, Eigen::Index start, Eigen::Index len);
// Row gather (duplicates allowed); gradients scatter-add back.
Tensor gather_rows(const Tensor& a, const std::vector<Eigen::Index>& rows);
Tensor pick(const Tensor& a, Eigen::Index i, Eigen::Index j);  // -> [1 x 1]
Tensor softmax_rows(const Tensor& a);

// Softmax over a column vector with entries disabled where valid[i] is
// false; disabled outputs are exactly zero. Stabilized by max subtraction.
// Throws when no entry is valid.
Tensor masked_softmax(const Tensor& scores, const std::vector<bool>& valid);

// Per-feature normalization across the row (node) axis with learned scale
// and shift; eps guards the variance denominator. Requires n >= 2 rows.
Tensor batch_norm_rows(const Tensor& x, const Tensor& gamma,
                       const Tensor& beta, double eps = 1e-5);

// Reverse pass from a scalar root; every reachable node is visited exactly
// once in topological order. Gradients accumulate additively into leaves.
void backward(const Tensor& root);

}  // namespace qsel::ad
