#pragma once

#include <cstdint>
#include <string>

#include "sentivol/corpus.hpp"
#include "sentivol/eval.hpp"
#include "sentivol/indicators.hpp"
#include "sentivol/market.hpp"
#include "sentivol/rnn.hpp"
#include "sentivol/sentiment.hpp"

namespace sentivol::cli {

/// Everything the pipeline needs, with defaults matching the module-level
/// documentation so an empty config file reproduces the documented runs.
/// Serialized as a flat `key = value` document (see config_keys_help()).
struct PipelineConfig {
    std::string posts_path;
    std::string prices_path;
    std::string output_dir = "out";

    corpus::TokenizerMode tokenizer = corpus::TokenizerMode::Whitespace;
    corpus::NgramPolicy ngram = corpus::NgramPolicy::Uni;
    corpus::Weighting weighting = corpus::Weighting::Tf;
    std::uint32_t min_df = 1;

    sentiment::TrainConfig sentiment{0.1, 300, 1, true};

    indicators::IndicatorOptions indicators; // epsilon 1e-4, l 5, trailing, continuous

    market::NormalizationMode normalization = market::NormalizationMode::TrainFit;
    market::LabelMode label_mode = market::LabelMode::NormalizedThreshold;

    rnn::RnnTrainConfig rnn; // k 10, lr 0.05, epochs 500, seed 0, init 0.5, hidden 25

    eval::SweepConfig sweep; // k 3..15, 50 replications, base_seed 1000
    double split_fraction = 0.8;

    struct Synth {
        int days = 250;
        int posts_per_day = 12;
        double coupling = 0.9;
        double noise = 0.1;
        std::uint64_t seed = 42;
    } synth;

    void validate() const; // throws ConfigError
};

PipelineConfig parse_config(const std::string& path);
PipelineConfig parse_config_text(const std::string& text);
std::string serialize_config(const PipelineConfig& cfg);
void write_config(const PipelineConfig& cfg, const std::string& path);

/// One line per key: name, default, meaning.
std::string config_keys_help();

} // namespace sentivol::cli
