#include "sentivol/synth.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "sentivol/errors.hpp"
#include "sentivol/ingest.hpp"

namespace sentivol::cli {

namespace {

const std::vector<std::string>& positive_pool() {
    static const std::vector<std::string> pool = {
        "up", "gain", "rally", "buy", "bull", "strong", "rise", "profit", "surge", "boom"};
    return pool;
}

const std::vector<std::string>& negative_pool() {
    static const std::vector<std::string> pool = {
        "down", "loss", "crash", "sell", "bear", "weak", "fall", "deficit", "slump", "panic"};
    return pool;
}

const std::vector<std::string>& neutral_pool() {
    static const std::vector<std::string> pool = {
        "stock", "market", "today", "price", "share", "trade", "open", "close", "board", "news"};
    return pool;
}

} // namespace

SynthData generate_synthetic_data(const SynthSpec& spec) {
    if (spec.days < 50) throw InvalidSpec{"days must be >= 50"};
    if (spec.posts_per_day < 2) throw InvalidSpec{"posts_per_day must be >= 2"};
    if (!(spec.coupling >= 0.0 && spec.coupling <= 1.0))
        throw InvalidSpec{"coupling must lie in [0,1]"};
    if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) throw InvalidSpec{"noise must lie in [0,1]"};

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> magnitude(0.005, 0.095);

    // Consecutive weekdays from a fixed Monday.
    std::vector<Date> days;
    days.reserve(spec.days);
    Date d{2020, 1, 6};
    while (static_cast<int>(days.size()) < spec.days) {
        if (!d.is_weekend()) days.push_back(d);
        d = d.next();
    }

    // Daily sentiment sign, then next-day direction coupled to it.
    std::vector<int> sign(spec.days);
    for (auto& s : sign) s = unit(rng) < 0.5 ? 1 : -1;

    std::vector<int> direction(spec.days, 0); // direction[t] moves P_{t-1} -> P_t
    for (int t = 1; t < spec.days; ++t) {
        const int coupled = sign[t - 1];
        direction[t] = unit(rng) < spec.coupling ? coupled : -coupled;
    }

    SynthData out;
    out.prices.reserve(spec.days);
    std::vector<double> vol(spec.days, 0.0);
    double price = 100.0;
    out.prices.push_back({days[0], price});
    for (int t = 1; t < spec.days; ++t) {
        vol[t] = direction[t] * magnitude(rng);
        price *= 1.0 + vol[t];
        out.prices.push_back({days[t], price});
    }

    std::size_t next_id = 0;
    char id_buf[24];
    for (int t = 0; t < spec.days; ++t) {
        // volume tracks that day's absolute move
        const double abs_v = t == 0 ? 0.05 : std::fabs(vol[t]);
        const int count = std::max(
            2, static_cast<int>(std::lround(spec.posts_per_day * (0.4 + 6.0 * abs_v))));
        const int n_pos = sign[t] > 0 ? (count * 3 + 3) / 4 : count / 4; // 75% / 25%

        for (int p = 0; p < count; ++p) {
            const bool positive = p < n_pos;
            corpus::Post post;
            std::snprintf(id_buf, sizeof(id_buf), "p%06zu", next_id++);
            post.id = id_buf;
            post.stock_id = "SYN001";
            post.date = days[t];
            post.label = positive ? corpus::Polarity::Positive : corpus::Polarity::Negative;

            const int n_markers = 1 + (unit(rng) < 0.5 ? 1 : 0);
            const int n_fillers = 2 + static_cast<int>(rng() % 4);
            for (int m = 0; m < n_markers; ++m) {
                const bool flip = unit(rng) < spec.noise;
                const auto& pool =
                    (positive != flip) ? positive_pool() : negative_pool();
                post.tokens.push_back(pool[rng() % pool.size()]);
            }
            for (int f = 0; f < n_fillers; ++f)
                post.tokens.push_back(neutral_pool()[rng() % neutral_pool().size()]);
            out.posts.push_back(std::move(post));
        }
    }
    return out;
}

void generate_synthetic(const SynthSpec& spec, const std::string& posts_path,
                        const std::string& prices_path) {
    const SynthData data = generate_synthetic_data(spec);
    write_posts_jsonl(data.posts, posts_path);
    write_prices_csv(data.prices, prices_path);
}

} // namespace sentivol::cli
