#include "sentivol/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sentivol/errors.hpp"

namespace sentivol::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError{"bad boolean for " + key + ": " + v};
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument{v};
        return d;
    } catch (const std::exception&) {
        throw ConfigError{"bad number for " + key + ": " + v};
    }
}

long long parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument{v};
        return i;
    } catch (const std::exception&) {
        throw ConfigError{"bad integer for " + key + ": " + v};
    }
}

struct Key {
    std::string help;
    std::function<std::string(const PipelineConfig&)> get;
    std::function<void(PipelineConfig&, const std::string&)> set;
};

// Single table drives parse, serialize and help, so the three cannot drift.
const std::map<std::string, Key>& key_table() {
    using C = PipelineConfig;
    static const std::map<std::string, Key> table = {
        {"posts", {"path to posts JSONL", [](const C& c) { return c.posts_path; },
                   [](C& c, const std::string& v) { c.posts_path = v; }}},
        {"prices", {"path to prices CSV", [](const C& c) { return c.prices_path; },
                    [](C& c, const std::string& v) { c.prices_path = v; }}},
        {"output_dir", {"directory for generated artifacts", [](const C& c) { return c.output_dir; },
                        [](C& c, const std::string& v) { c.output_dir = v; }}},
        {"tokenizer", {"whitespace | char-bigram (used when posts carry raw text)",
                       [](const C& c) {
                           return c.tokenizer == corpus::TokenizerMode::Whitespace ? "whitespace"
                                                                                   : "char-bigram";
                       },
                       [](C& c, const std::string& v) {
                           if (v == "whitespace") c.tokenizer = corpus::TokenizerMode::Whitespace;
                           else if (v == "char-bigram") c.tokenizer = corpus::TokenizerMode::CharBigram;
                           else throw ConfigError{"bad tokenizer: " + v};
                       }}},
        {"ngram", {"uni | uni-bi", [](const C& c) {
                       return c.ngram == corpus::NgramPolicy::Uni ? "uni" : "uni-bi";
                   },
                   [](C& c, const std::string& v) {
                       if (v == "uni") c.ngram = corpus::NgramPolicy::Uni;
                       else if (v == "uni-bi") c.ngram = corpus::NgramPolicy::UniAndBi;
                       else throw ConfigError{"bad ngram: " + v};
                   }}},
        {"weighting", {"tf | tf-idf", [](const C& c) {
                           return c.weighting == corpus::Weighting::Tf ? "tf" : "tf-idf";
                       },
                       [](C& c, const std::string& v) {
                           if (v == "tf") c.weighting = corpus::Weighting::Tf;
                           else if (v == "tf-idf") c.weighting = corpus::Weighting::TfIdf;
                           else throw ConfigError{"bad weighting: " + v};
                       }}},
        {"min_df", {"vocabulary document-frequency threshold",
                    [](const C& c) { return std::to_string(c.min_df); },
                    [](C& c, const std::string& v) {
                        const auto i = parse_int(v, "min_df");
                        if (i < 1) throw ConfigError{"min_df must be >= 1"};
                        c.min_df = static_cast<std::uint32_t>(i);
                    }}},
        {"sentiment.learning_rate", {"logistic-regression step size",
                                     [](const C& c) { return fmt_double(c.sentiment.learning_rate); },
                                     [](C& c, const std::string& v) {
                                         c.sentiment.learning_rate = parse_double(v, "sentiment.learning_rate");
                                     }}},
        {"sentiment.epochs", {"logistic-regression passes",
                              [](const C& c) { return std::to_string(c.sentiment.epochs); },
                              [](C& c, const std::string& v) {
                                  c.sentiment.epochs = static_cast<int>(parse_int(v, "sentiment.epochs"));
                              }}},
        {"sentiment.seed", {"shuffle seed for sentiment training",
                            [](const C& c) { return std::to_string(c.sentiment.seed); },
                            [](C& c, const std::string& v) {
                                c.sentiment.seed = static_cast<std::uint64_t>(parse_int(v, "sentiment.seed"));
                            }}},
        {"sentiment.shuffle", {"shuffle training order each epoch",
                               [](const C& c) { return c.sentiment.shuffle ? "true" : "false"; },
                               [](C& c, const std::string& v) {
                                   c.sentiment.shuffle = parse_bool(v, "sentiment.shuffle");
                               }}},
        {"sentiment.bias", {"append a constant feature to every post",
                            [](const C& c) { return c.sentiment.add_bias ? "true" : "false"; },
                            [](C& c, const std::string& v) {
                                c.sentiment.add_bias = parse_bool(v, "sentiment.bias");
                            }}},
        {"epsilon", {"bullishness smoothing constant",
                     [](const C& c) { return fmt_double(c.indicators.epsilon); },
                     [](C& c, const std::string& v) {
                         c.indicators.epsilon = parse_double(v, "epsilon");
                     }}},
        {"window.l", {"z-score window half-width in trading days",
                      [](const C& c) { return std::to_string(c.indicators.half_width); },
                      [](C& c, const std::string& v) {
                          c.indicators.half_width = static_cast<int>(parse_int(v, "window.l"));
                      }}},
        {"window.mode", {"trailing | centered (centered looks ahead)",
                         [](const C& c) {
                             return c.indicators.window_mode == indicators::WindowMode::Trailing
                                        ? "trailing"
                                        : "centered";
                         },
                         [](C& c, const std::string& v) {
                             if (v == "trailing") c.indicators.window_mode = indicators::WindowMode::Trailing;
                             else if (v == "centered") c.indicators.window_mode = indicators::WindowMode::Centered;
                             else throw ConfigError{"bad window.mode: " + v};
                         }}},
        {"bullishness", {"continuous | binary",
                         [](const C& c) {
                             return c.indicators.bullishness_mode == indicators::BullishnessMode::Continuous
                                        ? "continuous"
                                        : "binary";
                         },
                         [](C& c, const std::string& v) {
                             if (v == "continuous")
                                 c.indicators.bullishness_mode = indicators::BullishnessMode::Continuous;
                             else if (v == "binary")
                                 c.indicators.bullishness_mode = indicators::BullishnessMode::Binary;
                             else throw ConfigError{"bad bullishness: " + v};
                         }}},
        {"normalization", {"train-fit | whole-series (whole-series leaks test extrema)",
                           [](const C& c) {
                               return c.normalization == market::NormalizationMode::TrainFit
                                          ? "train-fit"
                                          : "whole-series";
                           },
                           [](C& c, const std::string& v) {
                               if (v == "train-fit") c.normalization = market::NormalizationMode::TrainFit;
                               else if (v == "whole-series") c.normalization = market::NormalizationMode::WholeSeries;
                               else throw ConfigError{"bad normalization: " + v};
                           }}},
        {"label_mode", {"threshold | sign (direction labels from v_norm>0.5 or v>0)",
                        [](const C& c) {
                            return c.label_mode == market::LabelMode::NormalizedThreshold ? "threshold"
                                                                                          : "sign";
                        },
                        [](C& c, const std::string& v) {
                            if (v == "threshold") c.label_mode = market::LabelMode::NormalizedThreshold;
                            else if (v == "sign") c.label_mode = market::LabelMode::Sign;
                            else throw ConfigError{"bad label_mode: " + v};
                        }}},
        {"rnn.k", {"lookback window for train-predict",
                   [](const C& c) { return std::to_string(c.rnn.k); },
                   [](C& c, const std::string& v) { c.rnn.k = static_cast<int>(parse_int(v, "rnn.k")); }}},
        {"rnn.learning_rate", {"RNN step size",
                               [](const C& c) { return fmt_double(c.rnn.learning_rate); },
                               [](C& c, const std::string& v) {
                                   c.rnn.learning_rate = parse_double(v, "rnn.learning_rate");
                               }}},
        {"rnn.epochs", {"RNN training passes",
                        [](const C& c) { return std::to_string(c.rnn.epochs); },
                        [](C& c, const std::string& v) {
                            c.rnn.epochs = static_cast<int>(parse_int(v, "rnn.epochs"));
                        }}},
        {"rnn.seed", {"RNN parameter-init seed for train-predict",
                      [](const C& c) { return std::to_string(c.rnn.seed); },
                      [](C& c, const std::string& v) {
                          c.rnn.seed = static_cast<std::uint64_t>(parse_int(v, "rnn.seed"));
                      }}},
        {"rnn.init_scale", {"uniform init half-range",
                            [](const C& c) { return fmt_double(c.rnn.init_scale); },
                            [](C& c, const std::string& v) {
                                c.rnn.init_scale = parse_double(v, "rnn.init_scale");
                            }}},
        {"rnn.hidden", {"hidden layer width",
                        [](const C& c) { return std::to_string(c.rnn.hidden); },
                        [](C& c, const std::string& v) {
                            const auto i = parse_int(v, "rnn.hidden");
                            if (i < 1) throw ConfigError{"rnn.hidden must be >= 1"};
                            c.rnn.hidden = static_cast<std::size_t>(i);
                        }}},
        {"sweep.k_min", {"sweep lower k",
                         [](const C& c) { return std::to_string(c.sweep.k_min); },
                         [](C& c, const std::string& v) {
                             c.sweep.k_min = static_cast<int>(parse_int(v, "sweep.k_min"));
                         }}},
        {"sweep.k_max", {"sweep upper k",
                         [](const C& c) { return std::to_string(c.sweep.k_max); },
                         [](C& c, const std::string& v) {
                             c.sweep.k_max = static_cast<int>(parse_int(v, "sweep.k_max"));
                         }}},
        {"sweep.replications", {"independent trainings per (method,k)",
                                [](const C& c) { return std::to_string(c.sweep.replications); },
                                [](C& c, const std::string& v) {
                                    c.sweep.replications = static_cast<int>(parse_int(v, "sweep.replications"));
                                }}},
        {"sweep.base_seed", {"replication r uses seed base_seed+r",
                             [](const C& c) { return std::to_string(c.sweep.base_seed); },
                             [](C& c, const std::string& v) {
                                 c.sweep.base_seed = static_cast<std::uint64_t>(parse_int(v, "sweep.base_seed"));
                             }}},
        {"sweep.threads", {"worker pool size for sweep cells",
                           [](const C& c) { return std::to_string(c.sweep.threads); },
                           [](C& c, const std::string& v) {
                               const auto i = parse_int(v, "sweep.threads");
                               if (i < 1) throw ConfigError{"sweep.threads must be >= 1"};
                               c.sweep.threads = static_cast<int>(i);
                           }}},
        {"split", {"chronological train fraction",
                   [](const C& c) { return fmt_double(c.split_fraction); },
                   [](C& c, const std::string& v) { c.split_fraction = parse_double(v, "split"); }}},
        {"synth.days", {"synthetic trading days",
                        [](const C& c) { return std::to_string(c.synth.days); },
                        [](C& c, const std::string& v) {
                            c.synth.days = static_cast<int>(parse_int(v, "synth.days"));
                        }}},
        {"synth.posts_per_day", {"baseline post volume",
                                 [](const C& c) { return std::to_string(c.synth.posts_per_day); },
                                 [](C& c, const std::string& v) {
                                     c.synth.posts_per_day =
                                         static_cast<int>(parse_int(v, "synth.posts_per_day"));
                                 }}},
        {"synth.coupling", {"P(next-day direction = today's sentiment sign)",
                            [](const C& c) { return fmt_double(c.synth.coupling); },
                            [](C& c, const std::string& v) {
                                c.synth.coupling = parse_double(v, "synth.coupling");
                            }}},
        {"synth.noise", {"marker-token contamination probability",
                         [](const C& c) { return fmt_double(c.synth.noise); },
                         [](C& c, const std::string& v) {
                             c.synth.noise = parse_double(v, "synth.noise");
                         }}},
        {"synth.seed", {"generator seed",
                        [](const C& c) { return std::to_string(c.synth.seed); },
                        [](C& c, const std::string& v) {
                            c.synth.seed = static_cast<std::uint64_t>(parse_int(v, "synth.seed"));
                        }}},
    };
    return table;
}

} // namespace

void PipelineConfig::validate() const {
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw ConfigError{"split must lie in (0,1)"};
    if (!(sentiment.learning_rate > 0.0)) throw ConfigError{"sentiment.learning_rate must be > 0"};
    if (sentiment.epochs < 1) throw ConfigError{"sentiment.epochs must be >= 1"};
    if (!(indicators.epsilon > 0.0)) throw ConfigError{"epsilon must be > 0"};
    if (indicators.half_width < 1) throw ConfigError{"window.l must be >= 1"};
    if (rnn.k < 1) throw ConfigError{"rnn.k must be >= 1"};
    if (!(rnn.learning_rate > 0.0)) throw ConfigError{"rnn.learning_rate must be > 0"};
    if (rnn.epochs < 1) throw ConfigError{"rnn.epochs must be >= 1"};
    if (!(rnn.init_scale > 0.0)) throw ConfigError{"rnn.init_scale must be > 0"};
    if (sweep.k_min < 1 || sweep.k_max < sweep.k_min) throw ConfigError{"bad sweep k range"};
    if (sweep.replications < 1) throw ConfigError{"sweep.replications must be >= 1"};
    if (!(synth.coupling >= 0.0 && synth.coupling <= 1.0))
        throw ConfigError{"synth.coupling must lie in [0,1]"};
    if (!(synth.noise >= 0.0 && synth.noise <= 1.0))
        throw ConfigError{"synth.noise must lie in [0,1]"};
}

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    cfg.sweep.rnn = cfg.rnn;
    cfg.sweep.split_fraction = cfg.split_fraction;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError{"line " + std::to_string(line_no) + ": expected key = value"};
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError{"line " + std::to_string(line_no) + ": unknown key " + key};
        it->second.set(cfg, value);
    }

    // Keep the sweep's embedded settings in lockstep with the flat keys.
    cfg.sweep.rnn = cfg.rnn;
    cfg.sweep.split_fraction = cfg.split_fraction;
    cfg.validate();
    return cfg;
}

PipelineConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError{"cannot open config " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    for (const auto& [key, entry] : key_table()) out << key << " = " << entry.get(cfg) << "\n";
    return out.str();
}

void write_config(const PipelineConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << serialize_config(cfg);
    if (!out) throw IoFailure{"write failed: " + path};
}

std::string config_keys_help() {
    std::ostringstream out;
    PipelineConfig defaults;
    for (const auto& [key, entry] : key_table())
        out << "  " << key << " (default: " << entry.get(defaults) << ") " << entry.help << "\n";
    return out.str();
}

} // namespace sentivol::cli
