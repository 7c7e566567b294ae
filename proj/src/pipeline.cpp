#include "sentivol/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "sentivol/errors.hpp"
#include "sentivol/ingest.hpp"
#include "sentivol/synth.hpp"

namespace sentivol::cli {

TrainedSentiment train_sentiment_stage(const std::vector<corpus::Post>& posts,
                                       const PipelineConfig& cfg) {
    std::vector<corpus::Post> labeled;
    for (const auto& p : posts)
        if (p.label) labeled.push_back(p);
    if (labeled.empty()) throw NoValidPosts{};

    TrainedSentiment out;
    out.vocab = corpus::build_vocabulary(labeled, cfg.ngram, cfg.min_df);
    const auto examples = sentiment::build_training_set(labeled, out.vocab, cfg.weighting);
    out.model = sentiment::train_logistic(examples, out.vocab, cfg.sentiment);
    out.labeled_posts = labeled.size();
    out.final_loss = sentiment::loss(out.model, examples);
    return out;
}

std::vector<indicators::ScoredPost> score_stage(const std::vector<corpus::Post>& posts,
                                                const corpus::Vocabulary& vocab,
                                                const sentiment::SentimentModel& model,
                                                const PipelineConfig& cfg) {
    if (!model.bound_to(vocab)) throw DimensionMismatch{"model/vocabulary fingerprints differ"};
    std::vector<indicators::ScoredPost> out;
    out.reserve(posts.size());
    for (const auto& p : posts) {
        const auto x = corpus::featurize(p, vocab, cfg.weighting);
        out.push_back({p.date, sentiment::signed_score(model, x)});
    }
    return out;
}

namespace {
std::string format9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

void write_scored_csv(const std::vector<corpus::Post>& posts, const corpus::Vocabulary& vocab,
                      const sentiment::SentimentModel& model, const PipelineConfig& cfg,
                      const std::string& path) {
    if (!model.bound_to(vocab)) throw DimensionMismatch{"model/vocabulary fingerprints differ"};
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "id,stock,date,signed_score,score,classified\n";
    for (const auto& p : posts) {
        const auto x = corpus::featurize(p, vocab, cfg.weighting);
        const double s = sentiment::signed_score(model, x);
        const double h = sentiment::sigmoid(s);
        out << p.id << ',' << p.stock_id << ',' << p.date.to_string() << ',' << format9(s) << ','
            << format9(h) << ',' << sentiment::classify(h) << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

std::vector<Date> trading_days_of(const market::PriceSeries& prices) {
    std::vector<Date> days;
    days.reserve(prices.size());
    for (const auto& p : prices) days.push_back(p.date);
    return days;
}

indicators::IndicatorSeries indicators_stage(const std::vector<indicators::ScoredPost>& scored,
                                             const market::PriceSeries& prices,
                                             const PipelineConfig& cfg) {
    return indicators::build_indicator_series(scored, trading_days_of(prices), cfg.indicators);
}

market::VolatilitySeries market_stage(const market::PriceSeries& prices,
                                      const PipelineConfig& cfg) {
    auto series = market::compute_volatility(prices);
    market::normalize_volatility(series, cfg.normalization, cfg.split_fraction, cfg.label_mode);
    return series;
}

market::JoinedSeries build_joined_series(const std::vector<corpus::Post>& posts,
                                         const market::PriceSeries& prices,
                                         const PipelineConfig& cfg) {
    const auto trained = train_sentiment_stage(posts, cfg);
    const auto scored = score_stage(posts, trained.vocab, trained.model, cfg);
    const auto ind = indicators_stage(scored, prices, cfg);
    const auto vol = market_stage(prices, cfg);
    return market::align(vol, ind);
}

std::vector<eval::ExperimentResult> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};
    std::string line;
    if (!std::getline(in, line) || line != "stock,method,k,replication,accuracy")
        throw IoFailure{"bad results header in " + path};

    std::map<std::tuple<std::string, std::string, int>, std::vector<double>> cells;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string stock, method, k_str, rep_str, acc_str;
        if (!std::getline(ss, stock, ',') || !std::getline(ss, method, ',') ||
            !std::getline(ss, k_str, ',') || !std::getline(ss, rep_str, ',') ||
            !std::getline(ss, acc_str))
            throw IoFailure{path + ":" + std::to_string(line_no) + ": bad row"};
        cells[{stock, method, std::stoi(k_str)}].push_back(std::stod(acc_str));
    }

    std::vector<eval::ExperimentResult> results;
    for (auto& [key, accs] : cells) {
        eval::ExperimentResult r;
        r.stock_id = std::get<0>(key);
        r.method = eval::method_from_name(std::get<1>(key));
        r.k = std::get<2>(key);
        r.accuracies = std::move(accs);
        double sum = 0.0;
        for (double a : r.accuracies) sum += a;
        r.mean = sum / static_cast<double>(r.accuracies.size());
        double ssd = 0.0;
        for (double a : r.accuracies) ssd += (a - r.mean) * (a - r.mean);
        r.std_dev = std::sqrt(ssd / static_cast<double>(r.accuracies.size()));
        results.push_back(std::move(r));
    }
    return results;
}

PipelineArtifacts run_full_pipeline(const PipelineConfig& cfg,
                                    const std::vector<eval::Method>& methods) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const auto in_dir = [&](const std::string& name) {
        return (fs::path(cfg.output_dir) / name).string();
    };

    PipelineArtifacts paths;
    paths.posts = cfg.posts_path;
    paths.prices = cfg.prices_path;

    if (paths.posts.empty() || paths.prices.empty()) {
        paths.posts = in_dir("posts.jsonl");
        paths.prices = in_dir("prices.csv");
        SynthSpec spec{cfg.synth.days, cfg.synth.posts_per_day, cfg.synth.coupling,
                       cfg.synth.noise, cfg.synth.seed};
        generate_synthetic(spec, paths.posts, paths.prices);
    }

    const auto loaded = load_posts(paths.posts, cfg.tokenizer);
    const auto prices = load_prices(paths.prices);

    const auto trained = train_sentiment_stage(loaded.posts, cfg);
    paths.model = in_dir("model.json");
    paths.vocab = in_dir("vocab.json");
    paths.dictionary = in_dir("dictionary.tsv");
    sentiment::save_model(trained.model, paths.model);
    corpus::save_vocabulary(trained.vocab, paths.vocab);
    sentiment::export_dictionary(trained.model, trained.vocab, paths.dictionary);

    paths.scored = in_dir("scored.csv");
    write_scored_csv(loaded.posts, trained.vocab, trained.model, cfg, paths.scored);

    const auto scored = score_stage(loaded.posts, trained.vocab, trained.model, cfg);
    const auto ind = indicators_stage(scored, prices, cfg);
    paths.indicators = in_dir("indicators.csv");
    indicators::write_indicators_csv(ind, paths.indicators);

    const auto vol = market_stage(prices, cfg);
    paths.volatility = in_dir("volatility.csv");
    market::write_volatility_csv(vol, paths.volatility);

    const auto joined = market::align(vol, ind);
    paths.joined = in_dir("joined.csv");
    market::write_joined_csv(joined, paths.joined);

    eval::SweepConfig sweep = cfg.sweep;
    sweep.rnn = cfg.rnn;
    sweep.split_fraction = cfg.split_fraction;
    const auto results = eval::sweep_k(joined, methods, sweep, loaded.posts.front().stock_id);
    paths.results = in_dir("results.csv");
    paths.summary = in_dir("summary.csv");
    paths.plotdata = in_dir("plotdata.csv");
    eval::write_results_csv(results, paths.results);
    eval::write_summary_csv(results, paths.summary);
    eval::write_plotdata_csv(results, paths.plotdata);
    return paths;
}

} // namespace sentivol::cli
