#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentivol/baselines.hpp"
#include "sentivol/market.hpp"
#include "sentivol/rnn.hpp"

namespace sentivol::eval {

enum class Method { RnnEmm, Rnn, Mlp, Svm, Rand };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Input width a method consumes: 1 for the indicator-blind RNN, 3 otherwise.
std::size_t method_d_in(Method m);

struct ExperimentResult {
    std::string stock_id;
    Method method = Method::RnnEmm;
    int k = 0;
    std::vector<double> accuracies; // one per replication
    double mean = 0.0;
    double std_dev = 0.0; // population

    std::size_t replications() const { return accuracies.size(); }
};

struct SweepConfig {
    int k_min = 3;
    int k_max = 15;
    int replications = 50;
    std::uint64_t base_seed = 1000;
    double split_fraction = 0.8;
    rnn::RnnTrainConfig rnn; // k and seed are overwritten per cell/replication
    int threads = 1;
    std::size_t min_test_samples = 20;
};

/// Fraction of positions where the vectors agree.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& actual);

/// Pearson product-moment coefficient.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Chronological split: samples whose target index is below
/// floor(split_fraction * n_days) train, the rest test.
struct SampleSplit {
    std::vector<rnn::WindowSample> train;
    std::vector<rnn::WindowSample> test;
};
SampleSplit split_samples(const market::JoinedSeries& rows, int k, std::size_t d_in,
                          double split_fraction);

/// Trains one model with the given seed and scores it on the test split.
double run_replication(const market::JoinedSeries& rows, Method method, int k,
                       std::uint64_t seed, const SweepConfig& cfg);

/// Full protocol: every (method, k in k_min..k_max) cell runs `replications`
/// trainings with seeds base_seed .. base_seed+replications-1. Cells fan out
/// to a bounded worker pool; per-cell seeding keeps results independent of
/// thread count.
std::vector<ExperimentResult> sweep_k(const market::JoinedSeries& rows,
                                      const std::vector<Method>& methods,
                                      const SweepConfig& cfg,
                                      const std::string& stock_id = "");

/// Best k for a method: argmax of mean accuracy, smallest k on ties.
const ExperimentResult& best_k(const std::vector<ExperimentResult>& results, Method method);

struct MethodComparison {
    Method method;
    double mean = 0.0;    // average over stocks of best-k mean accuracy
    double std_dev = 0.0; // population std of those per-stock values
};

/// Table-2-style summary across stocks. Every stock must carry every method.
std::vector<MethodComparison> compare_models(const std::vector<ExperimentResult>& all_results);

// CSV exports.
void write_results_csv(const std::vector<ExperimentResult>& results, const std::string& path);
void write_summary_csv(const std::vector<ExperimentResult>& results, const std::string& path);
void write_plotdata_csv(const std::vector<ExperimentResult>& results, const std::string& path);
void write_comparison_csv(const std::vector<MethodComparison>& table, const std::string& path);

} // namespace sentivol::eval
