#include "qsel/ad/layers.hpp"

#include <iostream>

#include "qsel/common/errors.hpp"

namespace qsel::ad {

Linear make_linear(ParamMap& params, const std::string& prefix, int in,
                   int out, Rng& rng) {
    Linear l;
    l.w = params.add(prefix + ".w", uniform_init(in, out, in, rng));
    l.b = params.add(prefix + ".b", uniform_init(1, out, in, rng));
    return l;
}

Tensor apply(const Linear& layer, const Tensor& x) {
    return add_row_broadcast(matmul(x, layer.w), layer.b);
}

Mlp make_mlp(ParamMap& params, const std::string& prefix,
             const std::vector<int>& dims, Rng& rng, Activation activation) {
    if (dims.size() < 2) {
        throw config_error("make_mlp: need at least input and output dims");
    }
    Mlp mlp;
    mlp.activation = activation;
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
        mlp.layers.push_back(make_linear(
            params, prefix + ".l" + std::to_string(i), dims[i], dims[i + 1], rng));
    }
    return mlp;
}

Tensor apply(const Mlp& mlp, Tensor x) {
    for (size_t i = 0; i < mlp.layers.size(); ++i) {
        x = apply(mlp.layers[i], x);
        if (i + 1 < mlp.layers.size()) {
            x = mlp.activation == Activation::Relu ? relu(x) : tanh_t(x);
        }
    }
    return x;
}

BatchNorm make_batch_norm(ParamMap& params, const std::string& prefix,
                          int dim) {
    BatchNorm bn;
    bn.gamma = params.add(prefix + ".gamma", Matrix::Ones(1, dim));
    bn.beta = params.add(prefix + ".beta", Matrix::Zero(1, dim));
    return bn;
}

Tensor apply(const BatchNorm& bn, const Tensor& x) {
    if (x.rows() < 2) {
        std::cerr << "[ad] warning: batch norm over a single node is "
                     "undefined; passing through unchanged\n";
        return x;
    }
    return batch_norm_rows(x, bn.gamma, bn.beta, bn.eps);
}

MultiHeadAttention make_mha(ParamMap& params, const std::string& prefix,
                            int d_h, int heads, Rng& rng) {
    if (heads < 1 || d_h % heads != 0) {
        throw config_error("make_mha: d_h must be divisible by heads");
    }
    MultiHeadAttention mha;
    mha.heads = heads;
    mha.wq = params.add(prefix + ".wq", uniform_init(d_h, d_h, d_h, rng));
    mha.wk = params.add(prefix + ".wk", uniform_init(d_h, d_h, d_h, rng));
    mha.wv = params.add(prefix + ".wv", uniform_init(d_h, d_h, d_h, rng));
    mha.wo = params.add(prefix + ".wo", uniform_init(d_h, d_h, d_h, rng));
    return mha;
}

Tensor apply(const MultiHeadAttention& mha, const Tensor& nodes) {
    const Eigen::Index d_h = nodes.cols();
    const Eigen::Index dk = d_h / mha.heads;
    const double inv_sqrt_dk = 1.0 / std::sqrt(double(dk));

    Tensor q = matmul(nodes, mha.wq);
    Tensor k = matmul(nodes, mha.wk);
    Tensor v = matmul(nodes, mha.wv);

    Tensor heads_out;
    for (int h = 0; h < mha.heads; ++h) {
        Tensor qh = slice_cols(q, h * dk, dk);
        Tensor kh = slice_cols(k, h * dk, dk);
        Tensor vh = slice_cols(v, h * dk, dk);
        Tensor attn =
            softmax_rows(scale(matmul(qh, transpose(kh)), inv_sqrt_dk));
        Tensor oh = matmul(attn, vh);
        heads_out = h == 0 ? oh : concat_cols(heads_out, oh);
    }
    return matmul(heads_out, mha.wo);
}

Encoder make_encoder(ParamMap& params, const std::string& prefix, int in_dim,
                     int d_h, int n_layers, int heads, int ff_dim, Rng& rng) {
    Encoder enc;
    enc.input_proj = make_linear(params, prefix + ".proj", in_dim, d_h, rng);
    for (int i = 0; i < n_layers; ++i) {
        const std::string lp = prefix + ".layer" + std::to_string(i);
        EncoderLayer layer{
            make_mha(params, lp + ".mha", d_h, heads, rng),
            make_mlp(params, lp + ".ff", {d_h, ff_dim, d_h}, rng),
            make_batch_norm(params, lp + ".bn_attn", d_h),
            make_batch_norm(params, lp + ".bn_ff", d_h),
        };
        enc.layers.push_back(std::move(layer));
    }
    return enc;
}

Tensor apply(const Encoder& enc, const Tensor& features) {
    Tensor h = apply(enc.input_proj, features);
    for (const EncoderLayer& layer : enc.layers) {
        h = apply(layer.bn_attn, h + apply(layer.mha, h));
        h = apply(layer.bn_ff, h + apply(layer.ff, h));
    }
    return h;
}

}  // namespace qsel::ad
