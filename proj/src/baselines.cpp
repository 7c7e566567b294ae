#include "sentivol/baselines.hpp"

#include <random>

#include "sentivol/errors.hpp"
#include "sentivol/sentiment.hpp"

namespace sentivol::rnn {

using sentiment::sigmoid;

std::vector<double> flatten(const WindowSample& sample) { return sample.inputs.data; }

double MlpModel::predict_prob(const WindowSample& sample) const {
    const auto x = flatten(sample);
    if (x.size() != input_dim)
        throw DimensionMismatch{"flattened width " + std::to_string(x.size()) +
                                " != mlp input " + std::to_string(input_dim)};
    double out = b2;
    for (std::size_t j = 0; j < hidden; ++j) {
        double act = b1[j];
        for (std::size_t i = 0; i < input_dim; ++i) act += x[i] * w1(i, j);
        out += sigmoid(act) * w2[j];
    }
    return sigmoid(out);
}

int MlpModel::predict(const WindowSample& sample) const {
    return market::binarize(predict_prob(sample));
}

int SvmModel::predict(const WindowSample& sample) const {
    const auto x = flatten(sample);
    if (x.size() != w.size())
        throw DimensionMismatch{"flattened width " + std::to_string(x.size()) +
                                " != svm input " + std::to_string(w.size())};
    double margin = b;
    for (std::size_t i = 0; i < x.size(); ++i) margin += w[i] * x[i];
    return margin > 0.0 ? 1 : 0;
}

std::vector<int> RandModel::predict_labels(std::size_t count) const {
    std::mt19937_64 rng(seed);
    std::vector<int> out(count);
    for (auto& v : out) v = static_cast<int>(rng() & 1u);
    return out;
}

std::vector<int> BaselineModel::predict_labels(const std::vector<WindowSample>& samples) const {
    std::vector<int> out;
    out.reserve(samples.size());
    switch (kind) {
        case BaselineKind::Mlp:
            for (const auto& s : samples) out.push_back(std::get<MlpModel>(impl).predict(s));
            break;
        case BaselineKind::LinearSvm:
            for (const auto& s : samples) out.push_back(std::get<SvmModel>(impl).predict(s));
            break;
        case BaselineKind::Rand:
            out = std::get<RandModel>(impl).predict_labels(samples.size());
            break;
    }
    return out;
}

MlpModel init_mlp(const RnnTrainConfig& cfg, std::size_t input_dim) {
    MlpModel m;
    m.input_dim = input_dim;
    m.hidden = cfg.hidden;
    m.w1 = Mat(input_dim, cfg.hidden);
    m.b1.assign(cfg.hidden, 0.0);
    m.w2.assign(cfg.hidden, 0.0);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-cfg.init_scale, cfg.init_scale);
    for (auto& v : m.w1.data) v = dist(rng);
    for (auto& v : m.b1) v = dist(rng);
    for (auto& v : m.w2) v = dist(rng);
    m.b2 = dist(rng);
    return m;
}

namespace {

MlpModel train_mlp(const std::vector<WindowSample>& samples, const RnnTrainConfig& cfg) {
    const std::size_t input_dim = samples.front().inputs.data.size();
    MlpModel m = init_mlp(cfg, input_dim);
    const double lr = cfg.learning_rate;

    std::vector<double> hidden_out(m.hidden);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& sample : samples) {
            const auto& x = sample.inputs.data;
            double out = m.b2;
            for (std::size_t j = 0; j < m.hidden; ++j) {
                double act = m.b1[j];
                for (std::size_t i = 0; i < input_dim; ++i) act += x[i] * m.w1(i, j);
                hidden_out[j] = sigmoid(act);
                out += hidden_out[j] * m.w2[j];
            }
            const double p = sigmoid(out);
            const double d_out = (p - sample.target) * p * (1.0 - p);

            for (std::size_t j = 0; j < m.hidden; ++j) {
                const double hj = hidden_out[j];
                const double da = d_out * m.w2[j] * hj * (1.0 - hj);
                m.w2[j] -= lr * d_out * hj;
                m.b1[j] -= lr * da;
                for (std::size_t i = 0; i < input_dim; ++i) m.w1(i, j) -= lr * da * x[i];
            }
            m.b2 -= lr * d_out;
        }
    }
    return m;
}

SvmModel train_svm(const std::vector<WindowSample>& samples, const RnnTrainConfig& cfg) {
    SvmModel m;
    m.w.assign(samples.front().inputs.data.size(), 0.0);
    const double lr = cfg.learning_rate;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        for (const auto& sample : samples) {
            const auto& x = sample.inputs.data;
            const double y = sample.target_label == 1 ? 1.0 : -1.0;
            double margin = m.b;
            for (std::size_t i = 0; i < x.size(); ++i) margin += m.w[i] * x[i];
            if (y * margin < 1.0) {
                for (std::size_t i = 0; i < x.size(); ++i) m.w[i] += lr * y * x[i];
                m.b += lr * y;
            }
        }
    }
    return m;
}

} // namespace

BaselineModel train_baseline(BaselineKind kind, const std::vector<WindowSample>& samples,
                             const RnnTrainConfig& cfg) {
    if (samples.empty() && kind != BaselineKind::Rand) throw EmptyDataset{};
    switch (kind) {
        case BaselineKind::Mlp:
            return {kind, train_mlp(samples, cfg)};
        case BaselineKind::LinearSvm:
            return {kind, train_svm(samples, cfg)};
        case BaselineKind::Rand:
        default:
            return {kind, RandModel{cfg.seed}};
    }
}

} // namespace sentivol::rnn
