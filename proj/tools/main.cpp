#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentivol/config.hpp"
#include "sentivol/errors.hpp"
#include "sentivol/ingest.hpp"
#include "sentivol/pipeline.hpp"
#include "sentivol/synth.hpp"

namespace sv = sentivol;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string posts;
    std::string prices;
    std::string outdir;
};

sv::cli::PipelineConfig resolve_config(const CommonOpts& opts) {
    sv::cli::PipelineConfig cfg;
    if (!opts.config_path.empty()) cfg = sv::cli::parse_config(opts.config_path);
    if (!opts.posts.empty()) cfg.posts_path = opts.posts;
    if (!opts.prices.empty()) cfg.prices_path = opts.prices;
    if (!opts.outdir.empty()) cfg.output_dir = opts.outdir;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key=value config file");
    cmd->add_option("--posts", opts.posts, "posts JSONL path (overrides config)");
    cmd->add_option("--prices", opts.prices, "prices CSV path (overrides config)");
    cmd->add_option("--outdir", opts.outdir, "output directory (overrides config)");
}

std::string in_outdir(const sv::cli::PipelineConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / name).string();
}

void report_line_errors(const sv::cli::LoadedPosts& loaded) {
    for (const auto& e : loaded.errors)
        std::cerr << "warning: skipped line " << e.line << ": " << e.message << "\n";
}

std::vector<sv::eval::Method> parse_methods(const std::string& csv) {
    std::vector<sv::eval::Method> methods;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const auto comma = csv.find(',', start);
        const auto token = csv.substr(start, comma == std::string::npos ? csv.size() - start
                                                                        : comma - start);
        if (!token.empty()) methods.push_back(sv::eval::method_from_name(token));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (methods.empty()) throw sv::ConfigError{"no methods given"};
    return methods;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentivol: forum-sentiment indicators fused with market volatility "
                 "for next-day direction prediction"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string methods_csv = "RNN+EMM,RNN";
    std::string checkpoint_out;
    std::string report_out;
    std::vector<std::string> results_files;
    bool print_keys = false;

    auto* synth = app.add_subcommand("synth", "generate a synthetic posts/prices pair");
    add_common(synth, opts);

    auto* train_sent = app.add_subcommand("train-sentiment",
                                          "learn the term-weight dictionary from labeled posts");
    add_common(train_sent, opts);

    auto* score = app.add_subcommand("score-posts", "score every post with a trained model");
    add_common(score, opts);

    auto* build_ind = app.add_subcommand("build-indicators",
                                         "daily bullishness/volume indicators with z-scores");
    add_common(build_ind, opts);

    auto* prep = app.add_subcommand("prepare-market",
                                    "volatility, normalization, labels and the joined dataset");
    add_common(prep, opts);

    auto* train_predict = app.add_subcommand("train-predict",
                                             "train one predictor and report test accuracy");
    add_common(train_predict, opts);
    train_predict->add_option("--method", methods_csv, "RNN+EMM | RNN | MLP | SVM | RAND");
    train_predict->add_option("--checkpoint", checkpoint_out, "write model checkpoint JSON");

    auto* sweep = app.add_subcommand("sweep", "k-sweep with seeded replications");
    add_common(sweep, opts);
    sweep->add_option("--methods", methods_csv, "comma-separated method list");

    auto* report = app.add_subcommand("report", "cross-stock method comparison table");
    report->add_option("--results", results_files, "results CSV files (one or more)")
        ->required();
    report->add_option("--out", report_out, "write comparison CSV here");

    auto* config_cmd = app.add_subcommand("config", "print the default config or key help");
    config_cmd->add_flag("--keys", print_keys, "describe every key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (config_cmd->parsed()) {
            if (print_keys)
                std::cout << sv::cli::config_keys_help();
            else
                std::cout << sv::cli::serialize_config(sv::cli::PipelineConfig{});
            return 0;
        }

        auto cfg = resolve_config(opts);

        if (synth->parsed()) {
            sv::cli::SynthSpec spec{cfg.synth.days, cfg.synth.posts_per_day, cfg.synth.coupling,
                                    cfg.synth.noise, cfg.synth.seed};
            const auto posts_path = in_outdir(cfg, "posts.jsonl");
            const auto prices_path = in_outdir(cfg, "prices.csv");
            sv::cli::generate_synthetic(spec, posts_path, prices_path);
            std::cout << "wrote " << posts_path << " and " << prices_path << "\n";
            return 0;
        }

        if (train_sent->parsed()) {
            const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
            report_line_errors(loaded);
            const auto trained = sv::cli::train_sentiment_stage(loaded.posts, cfg);
            sv::sentiment::save_model(trained.model, in_outdir(cfg, "model.json"));
            sv::corpus::save_vocabulary(trained.vocab, in_outdir(cfg, "vocab.json"));
            const auto n = sv::sentiment::export_dictionary(trained.model, trained.vocab,
                                                            in_outdir(cfg, "dictionary.tsv"));
            std::cout << "trained on " << trained.labeled_posts << " labeled posts, "
                      << n << " dictionary terms, final loss " << trained.final_loss << "\n";
            return 0;
        }

        if (score->parsed()) {
            const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
            report_line_errors(loaded);
            const auto vocab = sv::corpus::load_vocabulary(in_outdir(cfg, "vocab.json"));
            const auto model = sv::sentiment::load_model(in_outdir(cfg, "model.json"));
            const auto path = in_outdir(cfg, "scored.csv");
            sv::cli::write_scored_csv(loaded.posts, vocab, model, cfg, path);
            std::cout << "wrote " << path << " (" << loaded.posts.size() << " posts)\n";
            return 0;
        }

        if (build_ind->parsed()) {
            const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
            report_line_errors(loaded);
            const auto prices = sv::cli::load_prices(cfg.prices_path);
            const auto vocab = sv::corpus::load_vocabulary(in_outdir(cfg, "vocab.json"));
            const auto model = sv::sentiment::load_model(in_outdir(cfg, "model.json"));
            const auto scored = sv::cli::score_stage(loaded.posts, vocab, model, cfg);
            const auto series = sv::cli::indicators_stage(scored, prices, cfg);
            const auto path = in_outdir(cfg, "indicators.csv");
            sv::indicators::write_indicators_csv(series, path);
            std::cout << "wrote " << path << " (" << series.points.size() << " days)\n";
            return 0;
        }

        if (prep->parsed()) {
            const auto prices = sv::cli::load_prices(cfg.prices_path);
            auto vol = sv::cli::market_stage(prices, cfg);
            const auto vol_path = in_outdir(cfg, "volatility.csv");
            sv::market::write_volatility_csv(vol, vol_path);
            std::cout << "wrote " << vol_path << " (" << vol.points.size() << " days)\n";

            // join when indicators are already built
            const auto ind_path = in_outdir(cfg, "indicators.csv");
            if (fs::exists(ind_path)) {
                const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
                const auto vocab = sv::corpus::load_vocabulary(in_outdir(cfg, "vocab.json"));
                const auto model = sv::sentiment::load_model(in_outdir(cfg, "model.json"));
                const auto scored = sv::cli::score_stage(loaded.posts, vocab, model, cfg);
                const auto series = sv::cli::indicators_stage(scored, prices, cfg);
                const auto joined = sv::market::align(vol, series);
                const auto joined_path = in_outdir(cfg, "joined.csv");
                sv::market::write_joined_csv(joined, joined_path);
                std::cout << "wrote " << joined_path << " (" << joined.size() << " rows)\n";
            }
            return 0;
        }

        if (train_predict->parsed()) {
            const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
            report_line_errors(loaded);
            const auto prices = sv::cli::load_prices(cfg.prices_path);
            const auto joined = sv::cli::build_joined_series(loaded.posts, prices, cfg);
            const auto methods = parse_methods(methods_csv);
            const auto method = methods.front();

            sv::eval::SweepConfig scfg = cfg.sweep;
            scfg.rnn = cfg.rnn;
            scfg.split_fraction = cfg.split_fraction;
            const double acc = sv::eval::run_replication(joined, method, cfg.rnn.k,
                                                         cfg.rnn.seed, scfg);
            std::printf("%s k=%d seed=%llu test accuracy %.4f\n",
                        sv::eval::method_name(method).c_str(), cfg.rnn.k,
                        static_cast<unsigned long long>(cfg.rnn.seed), acc);

            if (!checkpoint_out.empty() &&
                (method == sv::eval::Method::RnnEmm || method == sv::eval::Method::Rnn)) {
                auto split = sv::eval::split_samples(joined, cfg.rnn.k,
                                                     sv::eval::method_d_in(method),
                                                     cfg.split_fraction);
                auto tc = cfg.rnn;
                const auto model =
                    sv::rnn::rnn_train(split.train, tc, sv::eval::method_d_in(method));
                sv::rnn::save_checkpoint(model, tc, checkpoint_out);
                std::cout << "wrote " << checkpoint_out << "\n";
            }
            return 0;
        }

        if (sweep->parsed()) {
            const auto loaded = sv::cli::load_posts(cfg.posts_path, cfg.tokenizer);
            report_line_errors(loaded);
            const auto prices = sv::cli::load_prices(cfg.prices_path);
            const auto joined = sv::cli::build_joined_series(loaded.posts, prices, cfg);
            const auto methods = parse_methods(methods_csv);

            sv::eval::SweepConfig scfg = cfg.sweep;
            scfg.rnn = cfg.rnn;
            scfg.split_fraction = cfg.split_fraction;
            const auto results =
                sv::eval::sweep_k(joined, methods, scfg, loaded.posts.front().stock_id);

            sv::eval::write_results_csv(results, in_outdir(cfg, "results.csv"));
            sv::eval::write_summary_csv(results, in_outdir(cfg, "summary.csv"));
            sv::eval::write_plotdata_csv(results, in_outdir(cfg, "plotdata.csv"));
            for (const auto m : methods) {
                const auto& best = sv::eval::best_k(results, m);
                std::printf("%-8s best k=%-2d mean accuracy %.4f (std %.4f, %d replications)\n",
                            sv::eval::method_name(m).c_str(), best.k, best.mean, best.std_dev,
                            static_cast<int>(best.replications()));
            }
            std::cout << "wrote results/summary/plotdata CSVs under " << cfg.output_dir << "\n";
            return 0;
        }

        if (report->parsed()) {
            std::vector<sv::eval::ExperimentResult> all;
            for (const auto& f : results_files) {
                auto part = sv::cli::read_results_csv(f);
                all.insert(all.end(), part.begin(), part.end());
            }
            const auto table = sv::eval::compare_models(all);
            std::printf("%-8s %-10s %-10s  (mean/std of best-k accuracy across stocks)\n",
                        "method", "MEAN", "STD");
            for (const auto& row : table)
                std::printf("%-8s %-10.6f %-10.6f\n", sv::eval::method_name(row.method).c_str(),
                            row.mean, row.std_dev);
            if (!report_out.empty()) sv::eval::write_comparison_csv(table, report_out);
            return 0;
        }

        std::cerr << "no subcommand\n";
        return 2;
    } catch (const sv::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
