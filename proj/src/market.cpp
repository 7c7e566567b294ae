#include "sentivol/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "sentivol/errors.hpp"

namespace sentivol::market {

double volatility(double p_t, double p_prev) {
    if (!(p_t > 0.0) || !(p_prev > 0.0))
        throw NonPositivePrice{"p_t=" + std::to_string(p_t) + " p_prev=" + std::to_string(p_prev)};
    return std::clamp((p_t - p_prev) / p_prev, -0.1, 0.1);
}

std::pair<double, double> fit_minmax(const std::vector<double>& values) {
    if (values.size() < 2) throw DegenerateRange{};
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*hi > *lo)) throw DegenerateRange{};
    return {*lo, *hi};
}

double apply_minmax(double v, double min, double max) {
    if (!(max > min)) throw DegenerateRange{};
    return std::clamp((v - min) / (max - min), 0.0, 1.0);
}

int binarize(double v_norm) { return v_norm > 0.5 ? 1 : 0; }

VolatilitySeries compute_volatility(const PriceSeries& prices) {
    VolatilitySeries out;
    for (std::size_t i = 1; i < prices.size(); ++i) {
        VolatilityPoint pt;
        pt.date = prices[i].date;
        pt.v = volatility(prices[i].close, prices[i - 1].close);
        out.points.push_back(pt);
    }
    return out;
}

void normalize_volatility(VolatilitySeries& series, NormalizationMode mode,
                          double split_fraction, LabelMode label_mode) {
    std::size_t fit_count = series.points.size();
    if (mode == NormalizationMode::TrainFit)
        fit_count = static_cast<std::size_t>(
            std::floor(split_fraction * static_cast<double>(series.points.size())));

    std::vector<double> values;
    values.reserve(fit_count);
    for (std::size_t i = 0; i < fit_count && i < series.points.size(); ++i)
        values.push_back(series.points[i].v);

    const auto [lo, hi] = fit_minmax(values);
    series.norm_min = lo;
    series.norm_max = hi;

    for (auto& pt : series.points) {
        pt.v_norm = apply_minmax(pt.v, lo, hi);
        pt.f = label_mode == LabelMode::NormalizedThreshold ? binarize(*pt.v_norm)
                                                            : (pt.v > 0.0 ? 1 : 0);
    }
}

JoinedSeries align(const VolatilitySeries& vol, const indicators::IndicatorSeries& ind) {
    if (vol.points.empty() || ind.points.empty()) throw EmptyIntersection{};

    JoinedSeries out;
    std::size_t iv = 0, ii = 0;
    while (iv < vol.points.size() && ii < ind.points.size()) {
        const auto& vp = vol.points[iv];
        const auto& ip = ind.points[ii];
        if (vp.date < ip.date) {
            ++iv;
        } else if (ip.date < vp.date) {
            ++ii;
        } else {
            if (!vp.v_norm || !vp.f)
                throw DomainError{"align requires a normalized volatility series"};
            JoinedRow row;
            row.date = vp.date;
            row.n_pos = ip.n_pos;
            row.n_neg = ip.n_neg;
            row.b = ip.b;
            row.n = ip.n;
            row.z_b = ip.z_b;
            row.z_n = ip.z_n;
            row.v = vp.v;
            row.v_norm = *vp.v_norm;
            row.f = *vp.f;
            out.push_back(row);
            ++iv;
            ++ii;
        }
    }
    if (out.empty()) throw EmptyIntersection{};
    return out;
}

namespace {
std::string format9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

void write_joined_csv(const JoinedSeries& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "date,n_pos,n_neg,B,N,Z_B,Z_N,v_norm,F\n";
    for (const auto& r : rows) {
        out << r.date.to_string() << ',' << r.n_pos << ',' << r.n_neg << ',' << format9(r.b)
            << ',' << r.n << ',' << format9(r.z_b) << ',' << format9(r.z_n) << ','
            << format9(r.v_norm) << ',' << r.f << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

void write_volatility_csv(const VolatilitySeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << "date,V,V_norm,F\n";
    for (const auto& pt : series.points) {
        out << pt.date.to_string() << ',' << format9(pt.v) << ','
            << (pt.v_norm ? format9(*pt.v_norm) : "") << ','
            << (pt.f ? std::to_string(*pt.f) : "") << '\n';
    }
    if (!out) throw IoFailure{"write failed: " + path};
}

} // namespace sentivol::market
