#include "sentivol/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "sentivol/errors.hpp"

namespace sentivol::eval {

std::string method_name(Method m) {
    switch (m) {
        case Method::RnnEmm: return "RNN+EMM";
        case Method::Rnn: return "RNN";
        case Method::Mlp: return "MLP";
        case Method::Svm: return "SVM";
        case Method::Rand: return "RAND";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "RNN+EMM") return Method::RnnEmm;
    if (name == "RNN") return Method::Rnn;
    if (name == "MLP") return Method::Mlp;
    if (name == "SVM") return Method::Svm;
    if (name == "RAND") return Method::Rand;
    throw ConfigError{"unknown method: " + name};
}

std::size_t method_d_in(Method m) { return m == Method::Rnn ? 1 : 3; }

double accuracy(const std::vector<int>& predicted, const std::vector<int>& actual) {
    if (predicted.size() != actual.size())
        throw LengthMismatch{std::to_string(predicted.size()) + " vs " +
                             std::to_string(actual.size())};
    if (predicted.empty()) throw EmptyVector{};
    std::size_t counter = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == actual[i]) ++counter;
    return static_cast<double>(counter) / static_cast<double>(predicted.size());
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 3)
        throw LengthMismatch{"correlation needs equal lengths >= 3, got " +
                             std::to_string(a.size()) + " and " + std::to_string(b.size())};
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) throw DegenerateSeries{};
    return cov / std::sqrt(va * vb);
}

SampleSplit split_samples(const market::JoinedSeries& rows, int k, std::size_t d_in,
                          double split_fraction) {
    const auto samples = rnn::build_window_samples(rows, k, d_in);
    const std::size_t split_idx = static_cast<std::size_t>(
        std::floor(split_fraction * static_cast<double>(rows.size())));

    SampleSplit out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t target_index = static_cast<std::size_t>(k) + i;
        if (target_index < split_idx)
            out.train.push_back(samples[i]);
        else
            out.test.push_back(samples[i]);
    }
    return out;
}

double run_replication(const market::JoinedSeries& rows, Method method, int k,
                       std::uint64_t seed, const SweepConfig& cfg) {
    const std::size_t d_in = method_d_in(method);
    auto split = split_samples(rows, k, d_in, cfg.split_fraction);
    if (split.test.empty() || split.train.empty())
        throw InsufficientData{"k=" + std::to_string(k)};

    rnn::RnnTrainConfig tc = cfg.rnn;
    tc.k = k;
    tc.seed = seed;

    std::vector<int> actual;
    actual.reserve(split.test.size());
    for (const auto& s : split.test) actual.push_back(s.target_label);

    std::vector<int> predicted;
    switch (method) {
        case Method::RnnEmm:
        case Method::Rnn: {
            const auto model = rnn::rnn_train(split.train, tc, d_in);
            predicted.reserve(split.test.size());
            for (const auto& s : split.test) predicted.push_back(rnn::predict_direction(model, s));
            break;
        }
        case Method::Mlp: {
            const auto model = rnn::train_baseline(rnn::BaselineKind::Mlp, split.train, tc);
            predicted = model.predict_labels(split.test);
            break;
        }
        case Method::Svm: {
            const auto model = rnn::train_baseline(rnn::BaselineKind::LinearSvm, split.train, tc);
            predicted = model.predict_labels(split.test);
            break;
        }
        case Method::Rand: {
            const auto model = rnn::train_baseline(rnn::BaselineKind::Rand, split.train, tc);
            predicted = model.predict_labels(split.test);
            break;
        }
    }
    return accuracy(predicted, actual);
}

namespace {

void finalize_stats(ExperimentResult& r) {
    if (r.accuracies.empty()) return;
    double sum = 0.0;
    for (double a : r.accuracies) sum += a;
    r.mean = sum / static_cast<double>(r.accuracies.size());
    double ssd = 0.0;
    for (double a : r.accuracies) ssd += (a - r.mean) * (a - r.mean);
    r.std_dev = std::sqrt(ssd / static_cast<double>(r.accuracies.size()));
}

} // namespace

std::vector<ExperimentResult> sweep_k(const market::JoinedSeries& rows,
                                      const std::vector<Method>& methods,
                                      const SweepConfig& cfg, const std::string& stock_id) {
    if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) throw ConfigError{"bad k range"};
    if (cfg.replications < 1) throw ConfigError{"replications must be >= 1"};

    // Validate once up front so a long sweep cannot die halfway through.
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        auto split = split_samples(rows, k, 3, cfg.split_fraction);
        if (split.test.size() < cfg.min_test_samples || split.train.empty())
            throw InsufficientData{"k=" + std::to_string(k) + " leaves " +
                                   std::to_string(split.test.size()) + " test samples, need " +
                                   std::to_string(cfg.min_test_samples)};
    }

    struct Cell {
        Method method;
        int k;
    };
    std::vector<Cell> cells;
    for (Method m : methods)
        for (int k = cfg.k_min; k <= cfg.k_max; ++k) cells.push_back({m, k});

    std::vector<ExperimentResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mu;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size() || failed.load()) break;
            try {
                ExperimentResult r;
                r.stock_id = stock_id;
                r.method = cells[i].method;
                r.k = cells[i].k;
                r.accuracies.reserve(cfg.replications);
                for (int rep = 0; rep < cfg.replications; ++rep)
                    r.accuracies.push_back(run_replication(
                        rows, cells[i].method, cells[i].k,
                        cfg.base_seed + static_cast<std::uint64_t>(rep), cfg));
                finalize_stats(r);
                results[i] = std::move(r);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true))
                    first_error = std::string("sweep cell failed: ") + e.what();
            }
        }
    };

    const int n_threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw Error{first_error};
    return results;
}

const ExperimentResult& best_k(const std::vector<ExperimentResult>& results, Method method) {
    const ExperimentResult* best = nullptr;
    for (const auto& r : results) {
        if (r.method != method) continue;
        if (!best || r.mean > best->mean || (r.mean == best->mean && r.k < best->k)) best = &r;
    }
    if (!best) throw MissingCell{"no results for method " + method_name(method)};
    return *best;
}

std::vector<MethodComparison> compare_models(const std::vector<ExperimentResult>& all_results) {
    if (all_results.empty()) throw MissingCell{"no results"};

    std::set<std::string> stocks;
    std::set<Method> methods;
    for (const auto& r : all_results) {
        stocks.insert(r.stock_id);
        methods.insert(r.method);
    }

    // per (stock, method): best-k mean accuracy
    std::map<Method, std::vector<double>> per_method;
    for (const auto& stock : stocks) {
        std::vector<ExperimentResult> of_stock;
        for (const auto& r : all_results)
            if (r.stock_id == stock) of_stock.push_back(r);
        for (Method m : methods) {
            bool has = std::any_of(of_stock.begin(), of_stock.end(),
                                   [m](const auto& r) { return r.method == m; });
            if (!has)
                throw MissingCell{"stock " + stock + " lacks method " + method_name(m)};
            per_method[m].push_back(best_k(of_stock, m).mean);
        }
    }

    std::vector<MethodComparison> table;
    for (auto& [m, values] : per_method) {
        MethodComparison c;
        c.method = m;
        double sum = 0.0;
        for (double v : values) sum += v;
        c.mean = sum / static_cast<double>(values.size());
        double ssd = 0.0;
        for (double v : values) ssd += (v - c.mean) * (v - c.mean);
        c.std_dev = std::sqrt(ssd / static_cast<double>(values.size()));
        table.push_back(c);
    }
    return table;
}

namespace {
std::string format9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    return out;
}
} // namespace

void write_results_csv(const std::vector<ExperimentResult>& results, const std::string& path) {
    auto out = open_out(path);
    out << "stock,method,k,replication,accuracy\n";
    for (const auto& r : results)
        for (std::size_t rep = 0; rep < r.accuracies.size(); ++rep)
            out << r.stock_id << ',' << method_name(r.method) << ',' << r.k << ',' << rep << ','
                << format9(r.accuracies[rep]) << '\n';
    if (!out) throw IoFailure{"write failed: " + path};
}

void write_summary_csv(const std::vector<ExperimentResult>& results, const std::string& path) {
    auto out = open_out(path);
    out << "stock,method,best_k,mean,std\n";
    std::set<std::string> stocks;
    std::set<Method> methods;
    for (const auto& r : results) {
        stocks.insert(r.stock_id);
        methods.insert(r.method);
    }
    for (const auto& stock : stocks) {
        std::vector<ExperimentResult> of_stock;
        for (const auto& r : results)
            if (r.stock_id == stock) of_stock.push_back(r);
        for (Method m : methods) {
            const auto& best = best_k(of_stock, m);
            out << stock << ',' << method_name(m) << ',' << best.k << ',' << format9(best.mean)
                << ',' << format9(best.std_dev) << '\n';
        }
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

void write_plotdata_csv(const std::vector<ExperimentResult>& results, const std::string& path) {
    auto out = open_out(path);
    out << "stock,method,k,mean,std\n";
    for (const auto& r : results)
        out << r.stock_id << ',' << method_name(r.method) << ',' << r.k << ',' << format9(r.mean)
            << ',' << format9(r.std_dev) << '\n';
    if (!out) throw IoFailure{"write failed: " + path};
}

void write_comparison_csv(const std::vector<MethodComparison>& table, const std::string& path) {
    auto out = open_out(path);
    out << "method,mean,std\n";
    for (const auto& c : table)
        out << method_name(c.method) << ',' << format9(c.mean) << ',' << format9(c.std_dev)
            << '\n';
    if (!out) throw IoFailure{"write failed: " + path};
}

} // namespace sentivol::eval
