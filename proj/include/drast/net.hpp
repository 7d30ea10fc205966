#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drast/error.hpp"
#include "drast/rng.hpp"

namespace drast {

enum class Activation { Sigmoid, Tanh, Relu, Identity };
enum class LossKind { Mse, Bce };

inline double activate(Activation act, double z) {
    switch (act) {
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::Tanh: return std::tanh(z);
        case Activation::Relu: return z > 0.0 ? z : 0.0;
        default: return z;
    }
}

// Derivative expressed through the activation value a = act(z).
inline double activate_grad(Activation act, double a, double z) {
    switch (act) {
        case Activation::Sigmoid: return a * (1.0 - a);
        case Activation::Tanh: return 1.0 - a * a;
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
        default: return 1.0;
    }
}

struct TrainSample {
    std::vector<double> x;
    std::vector<double> y;
};

// Dense layered network. Weights are row-major [out][in]; initialization is
// uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] from the construction seed.
class FeedForwardNet {
public:
    struct Layer {
        std::size_t in = 0, out = 0;
        std::vector<double> w;  // out x in
        std::vector<double> b;  // out
        Activation act = Activation::Identity;
    };

    FeedForwardNet() = default;

    FeedForwardNet(std::vector<std::size_t> sizes, std::vector<Activation> acts,
                   std::uint64_t seed)
        : sizes_(std::move(sizes)), seed_(seed) {
        if (sizes_.size() < 2 || acts.size() != sizes_.size() - 1)
            throw Error(errc::shape_mismatch,
                        "need n layer sizes and n-1 activation tags");
        Rng rng(seed);
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            Layer layer;
            layer.in = sizes_[l];
            layer.out = sizes_[l + 1];
            layer.act = acts[l];
            double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
            layer.w.resize(layer.in * layer.out);
            layer.b.assign(layer.out, 0.0);
            for (double& w : layer.w) w = rng.uniform(-bound, bound);
            layers_.push_back(std::move(layer));
        }
    }

    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::vector<Layer>& layers() { return layers_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::uint64_t seed() const { return seed_; }
    void set_seed(std::uint64_t s) { seed_ = s; }
    void set_sizes(std::vector<std::size_t> s) { sizes_ = std::move(s); }

    std::size_t input_size() const { return sizes_.front(); }
    std::size_t output_size() const { return sizes_.back(); }

    std::vector<double> forward(std::span<const double> x) const {
        if (x.size() != input_size())
            throw Error(errc::shape_mismatch,
                        "input size " + std::to_string(x.size()) + ", expected " +
                            std::to_string(input_size()));
        std::vector<double> a(x.begin(), x.end());
        for (const Layer& layer : layers_) {
            std::vector<double> next(layer.out);
            for (std::size_t o = 0; o < layer.out; ++o) {
                double z = layer.b[o];
                const double* row = layer.w.data() + o * layer.in;
                for (std::size_t i = 0; i < layer.in; ++i) z += row[i] * a[i];
                next[o] = activate(layer.act, z);
            }
            a = std::move(next);
        }
        return a;
    }

    // Truncated forward pass through the first `depth` layers (the encoder
    // half of an autoencoder).
    std::vector<double> forward_partial(std::span<const double> x, std::size_t depth) const {
        if (x.size() != input_size())
            throw Error(errc::shape_mismatch, "input size mismatch in partial forward");
        std::vector<double> a(x.begin(), x.end());
        for (std::size_t l = 0; l < depth && l < layers_.size(); ++l) {
            const Layer& layer = layers_[l];
            std::vector<double> next(layer.out);
            for (std::size_t o = 0; o < layer.out; ++o) {
                double z = layer.b[o];
                const double* row = layer.w.data() + o * layer.in;
                for (std::size_t i = 0; i < layer.in; ++i) z += row[i] * a[i];
                next[o] = activate(layer.act, z);
            }
            a = std::move(next);
        }
        return a;
    }

private:
    std::vector<std::size_t> sizes_;
    std::vector<Layer> layers_;
    std::uint64_t seed_ = 0;
};

namespace net_detail {

inline constexpr double kBceClamp = 1e-12;

inline double sample_loss(LossKind loss, std::span<const double> yhat,
                          std::span<const double> y) {
    double total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (loss == LossKind::Mse) {
            double d = yhat[i] - y[i];
            total += d * d;
        } else {
            double p = std::min(1.0 - kBceClamp, std::max(kBceClamp, yhat[i]));
            total += -(y[i] * std::log(p) + (1.0 - y[i]) * std::log(1.0 - p));
        }
    }
    return total;
}

struct ForwardTrace {
    std::vector<std::vector<double>> activations;  // [layer+1][width], [0] = input
    std::vector<std::vector<double>> pre;          // [layer][width] pre-activation z
};

inline ForwardTrace traced_forward(const FeedForwardNet& net, std::span<const double> x) {
    ForwardTrace trace;
    trace.activations.emplace_back(x.begin(), x.end());
    for (const auto& layer : net.layers()) {
        const auto& a = trace.activations.back();
        std::vector<double> z(layer.out), out(layer.out);
        for (std::size_t o = 0; o < layer.out; ++o) {
            double s = layer.b[o];
            const double* row = layer.w.data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) s += row[i] * a[i];
            z[o] = s;
            out[o] = activate(layer.act, s);
        }
        trace.pre.push_back(std::move(z));
        trace.activations.push_back(std::move(out));
    }
    return trace;
}

struct Gradients {
    std::vector<std::vector<double>> w;  // per layer, same shape as weights
    std::vector<std::vector<double>> b;

    explicit Gradients(const FeedForwardNet& net) {
        for (const auto& layer : net.layers()) {
            w.emplace_back(layer.w.size(), 0.0);
            b.emplace_back(layer.b.size(), 0.0);
        }
    }
    void clear() {
        for (auto& g : w) std::fill(g.begin(), g.end(), 0.0);
        for (auto& g : b) std::fill(g.begin(), g.end(), 0.0);
    }
};

// Accumulates dLoss/dparams for one sample into `grads`; returns the sample loss.
inline double backprop(const FeedForwardNet& net, const TrainSample& sample,
                       LossKind loss, Gradients& grads) {
    const auto& layers = net.layers();
    ForwardTrace trace = traced_forward(net, sample.x);
    const auto& yhat = trace.activations.back();

    std::vector<double> delta(yhat.size());
    const auto& out_layer = layers.back();
    for (std::size_t o = 0; o < yhat.size(); ++o) {
        if (loss == LossKind::Bce && out_layer.act == Activation::Sigmoid) {
            // combined derivative of BCE over sigmoid
            delta[o] = yhat[o] - sample.y[o];
        } else if (loss == LossKind::Bce) {
            double p = std::min(1.0 - kBceClamp, std::max(kBceClamp, yhat[o]));
            double dl = (p - sample.y[o]) / (p * (1.0 - p));
            delta[o] = dl * activate_grad(out_layer.act, yhat[o], trace.pre.back()[o]);
        } else {
            double dl = 2.0 * (yhat[o] - sample.y[o]);
            delta[o] = dl * activate_grad(out_layer.act, yhat[o], trace.pre.back()[o]);
        }
    }

    for (std::size_t l = layers.size(); l-- > 0;) {
        const auto& layer = layers[l];
        const auto& a_in = trace.activations[l];
        for (std::size_t o = 0; o < layer.out; ++o) {
            grads.b[l][o] += delta[o];
            double* grow = grads.w[l].data() + o * layer.in;
            for (std::size_t i = 0; i < layer.in; ++i) grow[i] += delta[o] * a_in[i];
        }
        if (l == 0) break;
        const auto& below = layers[l - 1];
        std::vector<double> next_delta(layer.in, 0.0);
        for (std::size_t i = 0; i < layer.in; ++i) {
            double s = 0;
            for (std::size_t o = 0; o < layer.out; ++o)
                s += layer.w[o * layer.in + i] * delta[o];
            next_delta[i] =
                s * activate_grad(below.act, trace.activations[l][i], trace.pre[l - 1][i]);
        }
        delta = std::move(next_delta);
    }
    return sample_loss(loss, yhat, sample.y);
}

}  // namespace net_detail

struct TrainReport {
    std::vector<double> epoch_loss;  // mean per-sample training loss, one per epoch
};

// Seeded mini-batch gradient descent. The seed drives only the per-epoch
// shuffle; weights come from the net's construction seed, so zero epochs
// leaves the net untouched.
inline TrainReport net_train(FeedForwardNet& net, std::span<const TrainSample> samples,
                             LossKind loss, std::size_t epochs, std::size_t batch_size,
                             double learning_rate, std::uint64_t seed) {
    TrainReport report;
    if (samples.empty() || epochs == 0) return report;
    if (batch_size == 0) batch_size = 1;
    for (const auto& s : samples)
        if (s.x.size() != net.input_size() || s.y.size() != net.output_size())
            throw Error(errc::shape_mismatch, "sample shape does not match the net");

    Rng rng(seed);
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    net_detail::Gradients grads(net);
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_total = 0;
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            std::size_t end = std::min(order.size(), start + batch_size);
            grads.clear();
            for (std::size_t i = start; i < end; ++i)
                epoch_total += net_detail::backprop(net, samples[order[i]], loss, grads);
            double scale = learning_rate / static_cast<double>(end - start);
            auto& layers = net.layers();
            for (std::size_t l = 0; l < layers.size(); ++l) {
                for (std::size_t k = 0; k < layers[l].w.size(); ++k)
                    layers[l].w[k] -= scale * grads.w[l][k];
                for (std::size_t k = 0; k < layers[l].b.size(); ++k)
                    layers[l].b[k] -= scale * grads.b[l][k];
            }
        }
        double mean = epoch_total / static_cast<double>(samples.size());
        if (!std::isfinite(mean))
            throw Error(errc::non_finite_loss,
                        "training diverged at epoch " + std::to_string(epoch) +
                            "; lower the learning rate");
        report.epoch_loss.push_back(mean);
    }
    return report;
}

// Central finite differences over every parameter. Returns the maximum
// relative discrepancy against backprop, with the denominator floored so that
// near-zero gradients are compared absolutely.
inline double net_gradient_check(const FeedForwardNet& net, const TrainSample& sample,
                                 LossKind loss, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1e-2)
        throw Error(errc::invalid_argument, "epsilon must be in (0, 1e-2]");

    net_detail::Gradients grads(net);
    net_detail::backprop(net, sample, loss, grads);

    FeedForwardNet probe = net;
    auto loss_at = [&]() {
        auto yhat = probe.forward(sample.x);
        return net_detail::sample_loss(loss, yhat, sample.y);
    };

    double worst = 0.0;
    auto& layers = probe.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        auto check_param = [&](double& param, double analytic) {
            double saved = param;
            param = saved + epsilon;
            double up = loss_at();
            param = saved - epsilon;
            double down = loss_at();
            param = saved;
            double numeric = (up - down) / (2.0 * epsilon);
            double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-4});
            worst = std::max(worst, std::abs(analytic - numeric) / denom);
        };
        for (std::size_t k = 0; k < layers[l].w.size(); ++k)
            check_param(layers[l].w[k], grads.w[l][k]);
        for (std::size_t k = 0; k < layers[l].b.size(); ++k)
            check_param(layers[l].b[k], grads.b[l][k]);
    }
    return worst;
}

}  // namespace drast
