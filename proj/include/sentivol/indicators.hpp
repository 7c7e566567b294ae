#pragma once

#include <string>
#include <vector>

#include "sentivol/date.hpp"

namespace sentivol::indicators {

enum class WindowMode { Centered, Trailing };
enum class BullishnessMode { Binary, Continuous };

/// A post reduced to what daily aggregation needs: its (possibly non-trading)
/// date and its pre-sigmoid signed score. Positive score classifies the post
/// as positive; zero or negative as negative.
struct ScoredPost {
    Date date;
    double signed_score;
};

struct DailyAggregate {
    Date date;
    int n_pos = 0;
    int n_neg = 0;
    double s_pos = 0.0; // sum of signed scores over positively classified posts, >= 0
    double s_neg = 0.0; // sum over negatively classified posts, <= 0
};

struct IndicatorPoint {
    Date date;
    int n_pos = 0;
    int n_neg = 0;
    double b = 0.0; // bullishness
    int n = 0;      // post volume
    double z_b = 0.0;
    double z_n = 0.0;
};

struct IndicatorOptions {
    double epsilon = 1e-4;
    int half_width = 5; // l, in trading days
    WindowMode window_mode = WindowMode::Trailing;
    BullishnessMode bullishness_mode = BullishnessMode::Continuous;
};

struct IndicatorSeries {
    std::vector<IndicatorPoint> points;
    IndicatorOptions options;
};

/// ln((1+n_pos)/(1+n_neg)).
double bullishness_binary(int n_pos, int n_neg);

/// ln((eps+s_pos)/(eps+|s_neg|)). Requires s_pos >= 0, s_neg <= 0, eps > 0.
double bullishness_continuous(double s_pos, double s_neg, double epsilon);

/// Windowed z-score of series[t]. Centered: mean/std over [t-l, t+l]
/// excluding t itself; Trailing: over [t-2l, t-1]. Windows truncate at the
/// series boundaries; a window of fewer than two points or zero deviation
/// yields 0. Population standard deviation.
double zscore_window(const std::vector<double>& series, std::size_t t, int half_width,
                     WindowMode mode);

/// One aggregate per trading day. Posts on non-trading days attribute to the
/// next trading day; posts after the last trading day are dropped.
std::vector<DailyAggregate> aggregate_daily(const std::vector<ScoredPost>& posts,
                                            const std::vector<Date>& trading_days);

IndicatorSeries build_indicator_series(const std::vector<ScoredPost>& posts,
                                       const std::vector<Date>& trading_days,
                                       const IndicatorOptions& options);

/// CSV: date,n_pos,n_neg,B,N,Z_B,Z_N with 9-significant-digit reals.
void write_indicators_csv(const IndicatorSeries& series, const std::string& path);

} // namespace sentivol::indicators
