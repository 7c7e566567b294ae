#pragma once

// Test-only utilities. The finite-difference oracles here are deliberately
// independent of the library's gradient code paths.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "sentivol/corpus.hpp"
#include "sentivol/market.hpp"

namespace testutil {

/// Central-difference derivative of eval() w.r.t. every listed parameter.
inline std::vector<double> fd_gradient(const std::function<double()>& eval,
                                       const std::vector<double*>& params,
                                       double step = 1e-5) {
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = *params[i];
        *params[i] = saved + step;
        const double up = eval();
        *params[i] = saved - step;
        const double down = eval();
        *params[i] = saved;
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

inline double rel_error(double a, double b, double floor = 1e-8) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), floor});
}

inline sentivol::Date day(int offset) {
    return sentivol::Date::from_day_number(sentivol::Date{2021, 1, 4}.day_number() + offset);
}

/// n consecutive calendar days from a fixed Monday.
inline std::vector<sentivol::Date> calendar(int n) {
    std::vector<sentivol::Date> days;
    for (int i = 0; i < n; ++i) days.push_back(day(i));
    return days;
}

inline sentivol::corpus::Post make_post(std::vector<std::string> tokens,
                                        std::optional<sentivol::corpus::Polarity> label = {},
                                        sentivol::Date date = {2021, 1, 4},
                                        std::string id = "t") {
    sentivol::corpus::Post p;
    p.id = std::move(id);
    p.stock_id = "TST";
    p.date = date;
    p.tokens = std::move(tokens);
    p.label = label;
    return p;
}

/// Joined series with deterministic pseudo-random columns, for window and
/// split plumbing tests.
inline sentivol::market::JoinedSeries synthetic_joined(int n, unsigned seed = 7) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> z(-2.0, 2.0);
    sentivol::market::JoinedSeries rows(n);
    for (int i = 0; i < n; ++i) {
        auto& r = rows[i];
        r.date = day(i);
        r.v_norm = unit(rng);
        r.v = (r.v_norm - 0.5) * 0.2;
        r.z_b = z(rng);
        r.z_n = z(rng);
        r.f = r.v_norm > 0.5 ? 1 : 0;
        r.n_pos = i % 5;
        r.n_neg = (i + 1) % 4;
        r.b = r.z_b * 0.5;
        r.n = r.n_pos + r.n_neg;
    }
    return rows;
}

} // namespace testutil
