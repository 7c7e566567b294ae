#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sentivol/rnn.hpp"

namespace sentivol::rnn {

enum class BaselineKind { Mlp, LinearSvm, Rand };

/// One sigmoid hidden layer (cfg.hidden units) and a sigmoid output over
/// the flattened k*d_in window, trained with squared-error SGD.
struct MlpModel {
    std::size_t input_dim = 0;
    std::size_t hidden = 25;
    Mat w1;                 // input_dim x hidden
    std::vector<double> b1; // hidden
    std::vector<double> w2; // hidden
    double b2 = 0.0;

    double predict_prob(const WindowSample& sample) const;
    int predict(const WindowSample& sample) const;

    bool operator==(const MlpModel&) const = default;
};

/// Hinge-loss SGD on flattened windows, labels mapped to {-1,+1};
/// prediction by sign of w.x + b.
struct SvmModel {
    std::vector<double> w;
    double b = 0.0;

    int predict(const WindowSample& sample) const;

    bool operator==(const SvmModel&) const = default;
};

/// Ignores features; emits seeded fair coin flips, one per sample.
struct RandModel {
    std::uint64_t seed = 0;

    std::vector<int> predict_labels(std::size_t count) const;
};

struct BaselineModel {
    BaselineKind kind;
    std::variant<MlpModel, SvmModel, RandModel> impl;

    std::vector<int> predict_labels(const std::vector<WindowSample>& samples) const;
};

MlpModel init_mlp(const RnnTrainConfig& cfg, std::size_t input_dim);

BaselineModel train_baseline(BaselineKind kind, const std::vector<WindowSample>& samples,
                             const RnnTrainConfig& cfg);

/// Row-major flattening of a sample's k x d_in input matrix.
std::vector<double> flatten(const WindowSample& sample);

} // namespace sentivol::rnn
