#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sentivol/date.hpp"
#include "sentivol/indicators.hpp"

namespace sentivol::market {

struct PricePoint {
    Date date;
    double close; // > 0
};

using PriceSeries = std::vector<PricePoint>;

enum class NormalizationMode { TrainFit, WholeSeries };
enum class LabelMode { NormalizedThreshold, Sign };

struct VolatilityPoint {
    Date date;
    double v = 0.0;                // clamped one-day relative change
    std::optional<double> v_norm;  // set after normalization
    std::optional<int> f;          // direction label, set with v_norm
};

struct VolatilitySeries {
    std::vector<VolatilityPoint> points;
    std::optional<double> norm_min;
    std::optional<double> norm_max;
};

/// Joined (indicators x market) row for one trading day.
struct JoinedRow {
    Date date;
    int n_pos = 0;
    int n_neg = 0;
    double b = 0.0;
    int n = 0;
    double z_b = 0.0;
    double z_n = 0.0;
    double v = 0.0;
    double v_norm = 0.0;
    int f = 0;
};

using JoinedSeries = std::vector<JoinedRow>;

/// (p_t - p_prev)/p_prev clamped to [-0.1, 0.1] (daily price-limit rule).
double volatility(double p_t, double p_prev);

/// Observed extrema of the training values. Throws DegenerateRange when
/// fewer than two values or max == min.
std::pair<double, double> fit_minmax(const std::vector<double>& values);

/// (v - min)/(max - min) clamped to [0, 1].
double apply_minmax(double v, double min, double max);

/// 1 if v_norm > 0.5 else 0.
int binarize(double v_norm);

/// Volatility from consecutive closes; the first day has no predecessor and
/// is dropped. v_norm/f stay unset.
VolatilitySeries compute_volatility(const PriceSeries& prices);

/// Fills v_norm and f. TrainFit fits extrema on the first
/// floor(split_fraction * n) points only (test values clamp into [0,1]);
/// WholeSeries fits on everything. Sign labeling thresholds raw v at 0
/// instead of v_norm at 0.5.
void normalize_volatility(VolatilitySeries& series, NormalizationMode mode,
                          double split_fraction,
                          LabelMode label_mode = LabelMode::NormalizedThreshold);

/// Inner join on date, chronological. Requires normalized input.
JoinedSeries align(const VolatilitySeries& vol, const indicators::IndicatorSeries& ind);

/// CSV: indicator columns plus v_norm and F.
void write_joined_csv(const JoinedSeries& rows, const std::string& path);

/// CSV: date,V,V_norm,F.
void write_volatility_csv(const VolatilitySeries& series, const std::string& path);

} // namespace sentivol::market
