#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentivol/corpus.hpp"

namespace sentivol::sentiment {

/// Learned term-weight vector, index-aligned with its Vocabulary. When
/// has_bias is set the weights carry one trailing entry for a constant
/// feature that every post implicitly contains with value 1.
struct SentimentModel {
    std::vector<double> weights;
    std::uint64_t vocab_fingerprint = 0;
    bool has_bias = false;

    std::size_t term_count() const { return weights.size() - (has_bias ? 1 : 0); }

    bool bound_to(const corpus::Vocabulary& vocab) const {
        return term_count() == vocab.size() && vocab_fingerprint == vocab.fingerprint();
    }
};

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 300;
    std::uint64_t seed = 0;
    bool shuffle = true;
    bool add_bias = false; // append a constant feature
};

struct DictionaryEntry {
    std::string term;
    double weight;
};

struct LabeledExample {
    corpus::FeatureVector x;
    int y; // 1 positive, 0 negative
};

/// 1/(1+e^-z), computed without overflow for any finite z.
double sigmoid(double z);

/// w.x of a sparse vector against the dense weight vector.
/// Throws DimensionMismatch when an index falls outside the model.
double signed_score(const SentimentModel& model, const corpus::FeatureVector& x);

/// sigmoid(w.x): probability the post is positive.
double score_post(const SentimentModel& model, const corpus::FeatureVector& x);

/// 1 if h > 0.5 else 0.
int classify(double h);

/// Average cross-entropy over the set, h clamped to [1e-12, 1-1e-12].
double loss(const SentimentModel& model, const std::vector<LabeledExample>& examples);

/// Featurizes labeled posts against the vocabulary. Throws UnlabeledPost.
std::vector<LabeledExample> build_training_set(const std::vector<corpus::Post>& posts,
                                               const corpus::Vocabulary& vocab,
                                               corpus::Weighting weighting);

/// Stochastic gradient descent from zero weights: per-example update
/// w <- w - alpha*(h-y)*x, cfg.epochs passes in seeded-shuffled order
/// (input order when shuffle is off). epoch_loss, when given, receives the
/// full-batch loss after each epoch.
SentimentModel train_logistic(const std::vector<LabeledExample>& examples,
                              const corpus::Vocabulary& vocab, const TrainConfig& cfg,
                              std::vector<double>* epoch_loss = nullptr);

/// TSV dictionary sorted by weight descending (ties lexicographic by term),
/// weights with 9 significant digits. Returns number of entries written.
std::size_t export_dictionary(const SentimentModel& model, const corpus::Vocabulary& vocab,
                              const std::string& path);

std::vector<DictionaryEntry> import_dictionary(const std::string& path);

/// Rebuilds a model from dictionary entries against the vocabulary that
/// produced them. Unknown terms throw DimensionMismatch.
SentimentModel model_from_dictionary(const std::vector<DictionaryEntry>& entries,
                                     const corpus::Vocabulary& vocab);

// Model file: JSON {vocab_fingerprint, weights:[...]}.
void save_model(const SentimentModel& model, const std::string& path);
SentimentModel load_model(const std::string& path);

} // namespace sentivol::sentiment
