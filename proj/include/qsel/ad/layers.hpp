#pragma once

#include "qsel/ad/params.hpp"
#include "qsel/ad/tensor.hpp"

namespace qsel::ad {

enum class Activation { Relu, Tanh };

struct Linear {
    Tensor w;  // [in x out]
    Tensor b;  // [1 x out]
};

Linear make_linear(ParamMap& params, const std::string& prefix, int in,
                   int out, Rng& rng);
Tensor apply(const Linear& layer, const Tensor& x);

// Fully connected stack: activation on hidden layers, linear output.
struct Mlp {
    std::vector<Linear> layers;
    Activation activation = Activation::Relu;
};

Mlp make_mlp(ParamMap& params, const std::string& prefix,
             const std::vector<int>& dims, Rng& rng,
             Activation activation = Activation::Relu);
Tensor apply(const Mlp& mlp, Tensor x);

struct BatchNorm {
    Tensor gamma;  // [1 x dim]
    Tensor beta;   // [1 x dim]
    double eps = 1e-5;
};

BatchNorm make_batch_norm(ParamMap& params, const std::string& prefix, int dim);

// Normalizes across the node (row) axis. A single-row input has undefined
// statistics: it is passed through unchanged with a stderr warning.
Tensor apply(const BatchNorm& bn, const Tensor& x);

struct MultiHeadAttention {
    Tensor wq, wk, wv, wo;  // all [d_h x d_h]
    int heads = 1;
};

MultiHeadAttention make_mha(ParamMap& params, const std::string& prefix,
                            int d_h, int heads, Rng& rng);

// Scaled dot-product self-attention over the node set; no positional
// information anywhere, so the op is permutation-equivariant in the rows.
Tensor apply(const MultiHeadAttention& mha, const Tensor& nodes);

struct EncoderLayer {
    MultiHeadAttention mha;
    Mlp ff;
    BatchNorm bn_attn, bn_ff;
};

// Input projection to d_h followed by interleaved attention and node-wise
// feed-forward blocks, each wrapped in skip-connection + batch norm.
struct Encoder {
    Linear input_proj;
    std::vector<EncoderLayer> layers;
};

Encoder make_encoder(ParamMap& params, const std::string& prefix, int in_dim,
                     int d_h, int n_layers, int heads, int ff_dim, Rng& rng);
Tensor apply(const Encoder& enc, const Tensor& features);

}  // namespace qsel::ad
