#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentivol/corpus.hpp"
#include "sentivol/market.hpp"

namespace sentivol::cli {

/// Generator knobs. Each day draws a sentiment sign; the next day's price
/// moves with that sign with probability `coupling` (0.5 = independent).
/// Post volume scales with the day's absolute volatility; `noise` is the
/// probability a marker token comes from the opposite polarity pool.
struct SynthSpec {
    int days = 250;
    int posts_per_day = 12;
    double coupling = 0.9;
    double noise = 0.1;
    std::uint64_t seed = 42;
};

struct SynthData {
    std::vector<corpus::Post> posts;
    market::PriceSeries prices;
};

/// Deterministic in seed: identical spec -> identical data.
SynthData generate_synthetic_data(const SynthSpec& spec);

/// Writes posts JSONL and prices CSV; byte-identical for identical specs.
void generate_synthetic(const SynthSpec& spec, const std::string& posts_path,
                        const std::string& prices_path);

} // namespace sentivol::cli
