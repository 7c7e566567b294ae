#pragma once

#include <string>
#include <vector>

#include "sentivol/corpus.hpp"
#include "sentivol/market.hpp"

namespace sentivol::cli {

struct LineError {
    int line = 0;
    std::string message;
};

struct LoadedPosts {
    std::vector<corpus::Post> posts;
    std::vector<LineError> errors; // malformed lines, skipped and reported
};

/// JSON Lines, one post per line:
///   {"id": str, "stock": str, "date": "YYYY-MM-DD", "tokens": [str,...],
///    "label": "pos"|"neg"|null}
/// A "text" field may replace "tokens"; it is tokenized with the given mode.
/// Malformed lines are collected, not fatal; zero valid posts is.
LoadedPosts load_posts(const std::string& path,
                       corpus::TokenizerMode mode = corpus::TokenizerMode::Whitespace);

/// CSV with header date,close; returns the series date-sorted. Duplicate
/// dates and non-positive closes are fatal.
market::PriceSeries load_prices(const std::string& path);

void write_posts_jsonl(const std::vector<corpus::Post>& posts, const std::string& path);
void write_prices_csv(const market::PriceSeries& prices, const std::string& path);

} // namespace sentivol::cli
