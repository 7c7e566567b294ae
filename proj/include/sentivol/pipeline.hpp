#pragma once

#include <string>
#include <vector>

#include "sentivol/config.hpp"
#include "sentivol/corpus.hpp"
#include "sentivol/eval.hpp"
#include "sentivol/indicators.hpp"
#include "sentivol/market.hpp"
#include "sentivol/sentiment.hpp"

namespace sentivol::cli {

struct TrainedSentiment {
    corpus::Vocabulary vocab;
    sentiment::SentimentModel model;
    std::size_t labeled_posts = 0;
    double final_loss = 0.0;
};

/// Vocabulary + logistic model from the labeled subset of the posts.
TrainedSentiment train_sentiment_stage(const std::vector<corpus::Post>& posts,
                                       const PipelineConfig& cfg);

/// Signed scores for every post (unlabeled included).
std::vector<indicators::ScoredPost> score_stage(const std::vector<corpus::Post>& posts,
                                                const corpus::Vocabulary& vocab,
                                                const sentiment::SentimentModel& model,
                                                const PipelineConfig& cfg);

void write_scored_csv(const std::vector<corpus::Post>& posts,
                      const corpus::Vocabulary& vocab,
                      const sentiment::SentimentModel& model, const PipelineConfig& cfg,
                      const std::string& path);

std::vector<Date> trading_days_of(const market::PriceSeries& prices);

indicators::IndicatorSeries indicators_stage(const std::vector<indicators::ScoredPost>& scored,
                                             const market::PriceSeries& prices,
                                             const PipelineConfig& cfg);

market::VolatilitySeries market_stage(const market::PriceSeries& prices,
                                      const PipelineConfig& cfg);

/// posts + prices -> joined per-day dataset, end to end.
market::JoinedSeries build_joined_series(const std::vector<corpus::Post>& posts,
                                         const market::PriceSeries& prices,
                                         const PipelineConfig& cfg);

/// Reads back a results CSV produced by eval::write_results_csv.
std::vector<eval::ExperimentResult> read_results_csv(const std::string& path);

struct PipelineArtifacts {
    std::string posts;
    std::string prices;
    std::string model;
    std::string vocab;
    std::string dictionary;
    std::string scored;
    std::string indicators;
    std::string volatility;
    std::string joined;
    std::string results;
    std::string summary;
    std::string plotdata;
};

/// synth (when no posts/prices are configured) -> sentiment -> indicators ->
/// market -> sweep, every artifact written under cfg.output_dir. Returns the
/// paths written; used by the CLI and by the reproducibility checks.
PipelineArtifacts run_full_pipeline(const PipelineConfig& cfg,
                                    const std::vector<eval::Method>& methods);

} // namespace sentivol::cli
