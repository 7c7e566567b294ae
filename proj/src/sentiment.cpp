#include "sentivol/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sentivol/errors.hpp"

namespace sentivol::sentiment {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double signed_score(const SentimentModel& model, const corpus::FeatureVector& x) {
    const std::size_t terms = model.term_count();
    double dot = model.has_bias ? model.weights.back() : 0.0;
    for (auto [idx, value] : x.entries) {
        if (idx >= terms)
            throw DimensionMismatch{"feature index " + std::to_string(idx) +
                                    " >= model size " + std::to_string(terms)};
        dot += model.weights[idx] * value;
    }
    return dot;
}

double score_post(const SentimentModel& model, const corpus::FeatureVector& x) {
    return sigmoid(signed_score(model, x));
}

int classify(double h) { return h > 0.5 ? 1 : 0; }

namespace {
constexpr double kProbClamp = 1e-12;

double clamped(double h) { return std::clamp(h, kProbClamp, 1.0 - kProbClamp); }
} // namespace

double loss(const SentimentModel& model, const std::vector<LabeledExample>& examples) {
    if (examples.empty()) throw EmptyDataset{};
    double total = 0.0;
    for (const auto& ex : examples) {
        const double h = clamped(score_post(model, ex.x));
        total += ex.y == 1 ? std::log(h) : std::log(1.0 - h);
    }
    return -total / static_cast<double>(examples.size());
}

std::vector<LabeledExample> build_training_set(const std::vector<corpus::Post>& posts,
                                               const corpus::Vocabulary& vocab,
                                               corpus::Weighting weighting) {
    std::vector<LabeledExample> out;
    out.reserve(posts.size());
    for (const auto& p : posts) {
        if (!p.label) throw UnlabeledPost{p.id};
        out.push_back({corpus::featurize(p, vocab, weighting),
                       *p.label == corpus::Polarity::Positive ? 1 : 0});
    }
    return out;
}

SentimentModel train_logistic(const std::vector<LabeledExample>& examples,
                              const corpus::Vocabulary& vocab, const TrainConfig& cfg,
                              std::vector<double>* epoch_loss) {
    if (examples.empty()) throw EmptyDataset{};
    const bool has_pos = std::any_of(examples.begin(), examples.end(),
                                     [](const auto& e) { return e.y == 1; });
    const bool has_neg = std::any_of(examples.begin(), examples.end(),
                                     [](const auto& e) { return e.y == 0; });
    if (!has_pos || !has_neg) throw DegenerateLabels{};

    SentimentModel model;
    model.weights.assign(vocab.size() + (cfg.add_bias ? 1 : 0), 0.0);
    model.vocab_fingerprint = vocab.fingerprint();
    model.has_bias = cfg.add_bias;

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            const auto& ex = examples[i];
            const double h = score_post(model, ex.x);
            const double residual = h - static_cast<double>(ex.y);
            for (auto [idx, value] : ex.x.entries)
                model.weights[idx] -= cfg.learning_rate * residual * value;
            if (cfg.add_bias) model.weights.back() -= cfg.learning_rate * residual;
        }
        if (epoch_loss) epoch_loss->push_back(loss(model, examples));
    }
    return model;
}

namespace {
std::string format9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

std::size_t export_dictionary(const SentimentModel& model, const corpus::Vocabulary& vocab,
                              const std::string& path) {
    if (!model.bound_to(vocab))
        throw DimensionMismatch{"model is not bound to this vocabulary"};

    std::vector<std::uint32_t> order(vocab.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (model.weights[a] != model.weights[b]) return model.weights[a] > model.weights[b];
        return vocab.terms()[a] < vocab.terms()[b];
    });

    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "term\tweight\n";
    for (std::uint32_t idx : order)
        out << vocab.terms()[idx] << '\t' << format9(model.weights[idx]) << '\n';
    if (!out) throw IoFailure{"write failed: " + path};
    return vocab.size();
}

std::vector<DictionaryEntry> import_dictionary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};
    std::string line;
    if (!std::getline(in, line) || line != "term\tweight")
        throw IoFailure{"bad dictionary header in " + path};
    std::vector<DictionaryEntry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw IoFailure{"bad dictionary row in " + path};
        entries.push_back({line.substr(0, tab), std::stod(line.substr(tab + 1))});
    }
    return entries;
}

SentimentModel model_from_dictionary(const std::vector<DictionaryEntry>& entries,
                                     const corpus::Vocabulary& vocab) {
    SentimentModel model;
    model.weights.assign(vocab.size(), 0.0);
    model.vocab_fingerprint = vocab.fingerprint();
    for (const auto& e : entries) {
        auto idx = vocab.index_of(e.term);
        if (!idx) throw DimensionMismatch{"dictionary term not in vocabulary: " + e.term};
        model.weights[*idx] = e.weight;
    }
    return model;
}

void save_model(const SentimentModel& model, const std::string& path) {
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(model.vocab_fingerprint));
    nlohmann::json j;
    j["vocab_fingerprint"] = std::string(fp);
    j["weights"] = model.weights;
    if (model.has_bias) j["has_bias"] = true;
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << j.dump(2) << "\n";
    if (!out) throw IoFailure{"write failed: " + path};
}

SentimentModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};
    nlohmann::json j;
    try {
        in >> j;
        SentimentModel model;
        model.weights = j.at("weights").get<std::vector<double>>();
        model.vocab_fingerprint =
            std::stoull(j.at("vocab_fingerprint").get<std::string>(), nullptr, 16);
        model.has_bias = j.value("has_bias", false);
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw IoFailure{"bad model file " + path + ": " + e.what()};
    }
}

} // namespace sentivol::sentiment
