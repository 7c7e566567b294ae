#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentivol/market.hpp"

namespace sentivol::rnn {

/// Dense row-major matrix, sized for the small networks used here.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const Mat&) const = default;
};

/// Elman network: hidden state h_t = f(x_t W1 + h_{t-1} W2 + B1),
/// prediction = f(h_k . W3 + B2), f = logistic sigmoid throughout.
struct RnnModel {
    std::size_t hidden = 25;
    std::size_t d_in = 3; // 3: v_norm, z_b, z_n; 1: v_norm only
    Mat w1;               // d_in x hidden
    Mat w2;               // hidden x hidden
    std::vector<double> w3; // hidden
    std::vector<double> b1; // hidden
    double b2 = 0.0;

    bool operator==(const RnnModel&) const = default;
};

/// k consecutive trading days of inputs plus the following day's target.
struct WindowSample {
    Mat inputs;       // k x d_in
    double target;    // v_norm of day t+1
    int target_label; // F of day t+1
};

struct RnnTrainConfig {
    int k = 10; // lookback window, swept 3..15
    double learning_rate = 0.05;
    int epochs = 500;
    std::uint64_t seed = 0;
    double init_scale = 0.5;
    std::size_t hidden = 25;
};

struct Forward {
    double prediction = 0.0;       // in (0,1)
    Mat hidden_states;             // k x hidden, one row per step
};

/// Parameter gradients of L = 0.5*(prediction - target)^2.
struct Gradients {
    Mat w1;
    Mat w2;
    std::vector<double> w3;
    std::vector<double> b1;
    double b2 = 0.0;
};

/// Rolls the hidden state across the window from a zero initial state and
/// returns every intermediate state for backpropagation through time.
Forward rnn_forward(const RnnModel& model, const WindowSample& sample);

/// Exact gradients via backpropagation through all k steps.
Gradients rnn_backward(const RnnModel& model, const WindowSample& sample);

/// Seeded uniform [-init_scale, init_scale] parameter draw.
RnnModel init_rnn(const RnnTrainConfig& cfg, std::size_t d_in);

/// Per-sample gradient steps, cfg.epochs passes in chronological order.
RnnModel rnn_train(const std::vector<WindowSample>& samples, const RnnTrainConfig& cfg,
                   std::size_t d_in);

/// 0.5 threshold on the forward prediction.
int predict_direction(const RnnModel& model, const WindowSample& sample);

/// Mean squared prediction error over a sample set.
double mse(const RnnModel& model, const std::vector<WindowSample>& samples);

/// Sliding windows over the joined series: sample t has inputs from days
/// [t-k+1, t] (first d_in of v_norm, z_b, z_n per day) and targets day t+1.
std::vector<WindowSample> build_window_samples(const market::JoinedSeries& rows, int k,
                                               std::size_t d_in);

// Checkpoint: JSON {H, d_in, W1, W2, W3, B1, B2, seed, config}, row-major.
void save_checkpoint(const RnnModel& model, const RnnTrainConfig& cfg, const std::string& path);
RnnModel load_checkpoint(const std::string& path, RnnTrainConfig* cfg_out = nullptr);

} // namespace sentivol::rnn
