#include "sentivol/rnn.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "sentivol/errors.hpp"
#include "sentivol/sentiment.hpp"

namespace sentivol::rnn {

using sentiment::sigmoid;

Forward rnn_forward(const RnnModel& model, const WindowSample& sample) {
    if (sample.inputs.cols != model.d_in)
        throw DimensionMismatch{"sample width " + std::to_string(sample.inputs.cols) +
                                " != model d_in " + std::to_string(model.d_in)};
    if (sample.inputs.rows == 0) throw DimensionMismatch{"empty window"};

    const std::size_t k = sample.inputs.rows;
    const std::size_t h = model.hidden;

    Forward fwd;
    fwd.hidden_states = Mat(k, h);

    std::vector<double> prev(h, 0.0);
    std::vector<double> act(h);
    for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t j = 0; j < h; ++j) act[j] = model.b1[j];
        for (std::size_t i = 0; i < model.d_in; ++i) {
            const double x = sample.inputs(t, i);
            for (std::size_t j = 0; j < h; ++j) act[j] += x * model.w1(i, j);
        }
        for (std::size_t i = 0; i < h; ++i) {
            const double p = prev[i];
            if (p == 0.0) continue;
            for (std::size_t j = 0; j < h; ++j) act[j] += p * model.w2(i, j);
        }
        for (std::size_t j = 0; j < h; ++j) {
            const double v = sigmoid(act[j]);
            fwd.hidden_states(t, j) = v;
            prev[j] = v;
        }
    }

    double out = model.b2;
    for (std::size_t j = 0; j < h; ++j) out += prev[j] * model.w3[j];
    fwd.prediction = sigmoid(out);
    return fwd;
}

Gradients rnn_backward(const RnnModel& model, const WindowSample& sample) {
    const Forward fwd = rnn_forward(model, sample);
    const std::size_t k = sample.inputs.rows;
    const std::size_t h = model.hidden;

    Gradients g;
    g.w1 = Mat(model.d_in, h);
    g.w2 = Mat(h, h);
    g.w3.assign(h, 0.0);
    g.b1.assign(h, 0.0);

    const double p = fwd.prediction;
    const double d_out = (p - sample.target) * p * (1.0 - p); // dL/d(output pre-activation)

    g.b2 = d_out;
    std::vector<double> dh(h); // dL/dh_t for the step being processed
    for (std::size_t j = 0; j < h; ++j) {
        g.w3[j] = fwd.hidden_states(k - 1, j) * d_out;
        dh[j] = model.w3[j] * d_out;
    }

    std::vector<double> da(h), dh_prev(h);
    for (std::size_t t = k; t-- > 0;) {
        for (std::size_t j = 0; j < h; ++j) {
            const double hv = fwd.hidden_states(t, j);
            da[j] = dh[j] * hv * (1.0 - hv);
            g.b1[j] += da[j];
        }
        for (std::size_t i = 0; i < model.d_in; ++i) {
            const double x = sample.inputs(t, i);
            for (std::size_t j = 0; j < h; ++j) g.w1(i, j) += x * da[j];
        }
        if (t > 0) {
            for (std::size_t i = 0; i < h; ++i) {
                const double hp = fwd.hidden_states(t - 1, i);
                double acc = 0.0;
                for (std::size_t j = 0; j < h; ++j) {
                    g.w2(i, j) += hp * da[j];
                    acc += model.w2(i, j) * da[j];
                }
                dh_prev[i] = acc;
            }
            std::swap(dh, dh_prev);
        }
        // h_0 is the zero vector, so the t==0 recurrent gradient vanishes
    }
    return g;
}

RnnModel init_rnn(const RnnTrainConfig& cfg, std::size_t d_in) {
    RnnModel model;
    model.hidden = cfg.hidden;
    model.d_in = d_in;
    model.w1 = Mat(d_in, cfg.hidden);
    model.w2 = Mat(cfg.hidden, cfg.hidden);
    model.w3.assign(cfg.hidden, 0.0);
    model.b1.assign(cfg.hidden, 0.0);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-cfg.init_scale, cfg.init_scale);
    for (auto& v : model.w1.data) v = dist(rng);
    for (auto& v : model.w2.data) v = dist(rng);
    for (auto& v : model.w3) v = dist(rng);
    for (auto& v : model.b1) v = dist(rng);
    model.b2 = dist(rng);
    return model;
}

RnnModel rnn_train(const std::vector<WindowSample>& samples, const RnnTrainConfig& cfg,
                   std::size_t d_in) {
    if (samples.empty()) throw EmptyDataset{};

    RnnModel model = init_rnn(cfg, d_in);
    const double lr = cfg.learning_rate;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& sample : samples) {
            const Gradients g = rnn_backward(model, sample);
            for (std::size_t i = 0; i < model.w1.data.size(); ++i)
                model.w1.data[i] -= lr * g.w1.data[i];
            for (std::size_t i = 0; i < model.w2.data.size(); ++i)
                model.w2.data[i] -= lr * g.w2.data[i];
            for (std::size_t j = 0; j < model.hidden; ++j) {
                model.w3[j] -= lr * g.w3[j];
                model.b1[j] -= lr * g.b1[j];
            }
            model.b2 -= lr * g.b2;
        }
    }
    return model;
}

int predict_direction(const RnnModel& model, const WindowSample& sample) {
    return market::binarize(rnn_forward(model, sample).prediction);
}

double mse(const RnnModel& model, const std::vector<WindowSample>& samples) {
    if (samples.empty()) throw EmptyDataset{};
    double total = 0.0;
    for (const auto& s : samples) {
        const double r = rnn_forward(model, s).prediction - s.target;
        total += r * r;
    }
    return total / static_cast<double>(samples.size());
}

std::vector<WindowSample> build_window_samples(const market::JoinedSeries& rows, int k,
                                               std::size_t d_in) {
    if (k < 1) throw DomainError{"window length k must be >= 1"};
    if (d_in != 1 && d_in != 3) throw DomainError{"d_in must be 1 or 3"};

    std::vector<WindowSample> samples;
    if (rows.size() <= static_cast<std::size_t>(k)) return samples;

    for (std::size_t target = k; target < rows.size(); ++target) {
        WindowSample s;
        s.inputs = Mat(static_cast<std::size_t>(k), d_in);
        for (int step = 0; step < k; ++step) {
            const auto& r = rows[target - k + step];
            s.inputs(step, 0) = r.v_norm;
            if (d_in == 3) {
                s.inputs(step, 1) = r.z_b;
                s.inputs(step, 2) = r.z_n;
            }
        }
        s.target = rows[target].v_norm;
        s.target_label = rows[target].f;
        samples.push_back(std::move(s));
    }
    return samples;
}

void save_checkpoint(const RnnModel& model, const RnnTrainConfig& cfg, const std::string& path) {
    nlohmann::json j;
    j["H"] = model.hidden;
    j["d_in"] = model.d_in;
    j["W1"] = model.w1.data;
    j["W2"] = model.w2.data;
    j["W3"] = model.w3;
    j["B1"] = model.b1;
    j["B2"] = model.b2;
    j["seed"] = cfg.seed;
    j["config"] = {{"k", cfg.k},
                   {"learning_rate", cfg.learning_rate},
                   {"epochs", cfg.epochs},
                   {"init_scale", cfg.init_scale}};
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << j.dump(2) << "\n";
    if (!out) throw IoFailure{"write failed: " + path};
}

RnnModel load_checkpoint(const std::string& path, RnnTrainConfig* cfg_out) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};
    nlohmann::json j;
    try {
        in >> j;
        RnnModel model;
        model.hidden = j.at("H").get<std::size_t>();
        model.d_in = j.at("d_in").get<std::size_t>();
        model.w1 = Mat(model.d_in, model.hidden);
        model.w1.data = j.at("W1").get<std::vector<double>>();
        model.w2 = Mat(model.hidden, model.hidden);
        model.w2.data = j.at("W2").get<std::vector<double>>();
        model.w3 = j.at("W3").get<std::vector<double>>();
        model.b1 = j.at("B1").get<std::vector<double>>();
        model.b2 = j.at("B2").get<double>();
        if (model.w1.data.size() != model.d_in * model.hidden ||
            model.w2.data.size() != model.hidden * model.hidden ||
            model.w3.size() != model.hidden || model.b1.size() != model.hidden)
            throw IoFailure{"checkpoint shapes inconsistent: " + path};
        if (cfg_out) {
            cfg_out->seed = j.at("seed").get<std::uint64_t>();
            const auto& c = j.at("config");
            cfg_out->k = c.at("k").get<int>();
            cfg_out->learning_rate = c.at("learning_rate").get<double>();
            cfg_out->epochs = c.at("epochs").get<int>();
            cfg_out->init_scale = c.at("init_scale").get<double>();
            cfg_out->hidden = model.hidden;
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw IoFailure{"bad checkpoint file " + path + ": " + e.what()};
    }
}

} // namespace sentivol::rnn
