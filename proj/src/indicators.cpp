#include "sentivol/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "sentivol/errors.hpp"

namespace sentivol::indicators {

double bullishness_binary(int n_pos, int n_neg) {
    if (n_pos < 0 || n_neg < 0) throw DomainError{"negative post count"};
    return std::log((1.0 + n_pos) / (1.0 + n_neg));
}

double bullishness_continuous(double s_pos, double s_neg, double epsilon) {
    if (s_pos < 0.0) throw DomainError{"s_pos must be >= 0"};
    if (s_neg > 0.0) throw DomainError{"s_neg must be <= 0"};
    if (!(epsilon > 0.0)) throw DomainError{"epsilon must be > 0"};
    return std::log((epsilon + s_pos) / (epsilon + std::fabs(s_neg)));
}

double zscore_window(const std::vector<double>& series, std::size_t t, int half_width,
                     WindowMode mode) {
    if (t >= series.size())
        throw IndexOutOfRange{"t=" + std::to_string(t) + " len=" + std::to_string(series.size())};
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(series.size());
    const std::ptrdiff_t ti = static_cast<std::ptrdiff_t>(t);
    const std::ptrdiff_t l = half_width;

    std::ptrdiff_t lo, hi; // inclusive bounds before truncation
    if (mode == WindowMode::Centered) {
        lo = ti - l;
        hi = ti + l;
    } else {
        lo = ti - 2 * l;
        hi = ti - 1;
    }
    lo = std::max<std::ptrdiff_t>(lo, 0);
    hi = std::min(hi, n - 1);

    double sum = 0.0;
    std::ptrdiff_t count = 0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
        if (mode == WindowMode::Centered && i == ti) continue;
        sum += series[i];
        ++count;
    }
    if (count < 2) return 0.0;

    const double mean = sum / static_cast<double>(count);
    double ssd = 0.0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
        if (mode == WindowMode::Centered && i == ti) continue;
        const double d = series[i] - mean;
        ssd += d * d;
    }
    const double sigma = std::sqrt(ssd / static_cast<double>(count));
    if (sigma == 0.0) return 0.0;
    return (series[t] - mean) / sigma;
}

std::vector<DailyAggregate> aggregate_daily(const std::vector<ScoredPost>& posts,
                                            const std::vector<Date>& trading_days) {
    if (trading_days.empty()) throw EmptyCalendar{};
    for (std::size_t i = 1; i < trading_days.size(); ++i)
        if (!(trading_days[i - 1] < trading_days[i]))
            throw DomainError{"trading days must be strictly increasing"};

    std::vector<DailyAggregate> days(trading_days.size());
    for (std::size_t i = 0; i < trading_days.size(); ++i) days[i].date = trading_days[i];

    for (const auto& p : posts) {
        auto it = std::lower_bound(trading_days.begin(), trading_days.end(), p.date);
        if (it == trading_days.end()) continue; // nothing after the calendar to attribute to
        auto& day = days[static_cast<std::size_t>(it - trading_days.begin())];
        if (p.signed_score > 0.0) {
            ++day.n_pos;
            day.s_pos += p.signed_score;
        } else {
            ++day.n_neg;
            day.s_neg += p.signed_score;
        }
    }
    return days;
}

IndicatorSeries build_indicator_series(const std::vector<ScoredPost>& posts,
                                       const std::vector<Date>& trading_days,
                                       const IndicatorOptions& options) {
    if (!(options.epsilon > 0.0)) throw DomainError{"epsilon must be > 0"};
    if (options.half_width < 1) throw DomainError{"window half-width must be >= 1"};
    const auto days = aggregate_daily(posts, trading_days);

    IndicatorSeries series;
    series.options = options;
    series.points.resize(days.size());

    std::vector<double> b(days.size()), n(days.size());
    for (std::size_t i = 0; i < days.size(); ++i) {
        const auto& d = days[i];
        b[i] = options.bullishness_mode == BullishnessMode::Binary
                   ? bullishness_binary(d.n_pos, d.n_neg)
                   : bullishness_continuous(d.s_pos, d.s_neg, options.epsilon);
        n[i] = static_cast<double>(d.n_pos + d.n_neg);

        auto& pt = series.points[i];
        pt.date = d.date;
        pt.n_pos = d.n_pos;
        pt.n_neg = d.n_neg;
        pt.b = b[i];
        pt.n = d.n_pos + d.n_neg;
    }
    for (std::size_t i = 0; i < days.size(); ++i) {
        series.points[i].z_b = zscore_window(b, i, options.half_width, options.window_mode);
        series.points[i].z_n = zscore_window(n, i, options.half_width, options.window_mode);
    }
    return series;
}

namespace {
std::string format9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

void write_indicators_csv(const IndicatorSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "date,n_pos,n_neg,B,N,Z_B,Z_N\n";
    for (const auto& pt : series.points) {
        out << pt.date.to_string() << ',' << pt.n_pos << ',' << pt.n_neg << ','
            << format9(pt.b) << ',' << pt.n << ',' << format9(pt.z_b) << ','
            << format9(pt.z_n) << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

} // namespace sentivol::indicators
