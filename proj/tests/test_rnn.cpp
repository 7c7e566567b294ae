#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "sentivol/errors.hpp"
#include "sentivol/rnn.hpp"

#include "helpers.hpp"

using namespace sentivol;
using namespace sentivol::rnn;

namespace {

double sig(double z) { return 1.0 / (1.0 + std::exp(-z)); }

WindowSample random_sample(std::mt19937_64& rng, int k, std::size_t d_in) {
    std::uniform_real_distribution<double> in(-2.0, 2.0);
    std::uniform_real_distribution<double> tgt(0.0, 1.0);
    WindowSample s;
    s.inputs = Mat(static_cast<std::size_t>(k), d_in);
    for (auto& v : s.inputs.data) v = in(rng);
    s.target = tgt(rng);
    s.target_label = s.target > 0.5 ? 1 : 0;
    return s;
}

std::vector<double*> parameter_slots(RnnModel& m) {
    std::vector<double*> slots;
    for (auto& v : m.w1.data) slots.push_back(&v);
    for (auto& v : m.w2.data) slots.push_back(&v);
    for (auto& v : m.w3) slots.push_back(&v);
    for (auto& v : m.b1) slots.push_back(&v);
    slots.push_back(&m.b2);
    return slots;
}

std::vector<double> gradient_flat(const Gradients& g) {
    std::vector<double> flat;
    flat.insert(flat.end(), g.w1.data.begin(), g.w1.data.end());
    flat.insert(flat.end(), g.w2.data.begin(), g.w2.data.end());
    flat.insert(flat.end(), g.w3.begin(), g.w3.end());
    flat.insert(flat.end(), g.b1.begin(), g.b1.end());
    flat.push_back(g.b2);
    return flat;
}

} // namespace

TEST_SUITE("rnn") {

TEST_CASE("forward with zero parameters sits at the sigmoid fixed point") {
    RnnTrainConfig cfg;
    cfg.hidden = 4;
    cfg.init_scale = 0.5;
    RnnModel m = init_rnn(cfg, 3);
    for (auto& v : m.w1.data) v = 0.0;
    for (auto& v : m.w2.data) v = 0.0;
    for (auto& v : m.w3) v = 0.0;
    for (auto& v : m.b1) v = 0.0;
    m.b2 = 0.0;

    std::mt19937_64 rng(1);
    const auto s = random_sample(rng, 5, 3);
    const auto fwd = rnn_forward(m, s);
    CHECK(fwd.prediction == doctest::Approx(0.5));
    for (double h : fwd.hidden_states.data) CHECK(h == doctest::Approx(0.5));
}

TEST_CASE("forward hand trace, one hidden unit") {
    RnnModel m;
    m.hidden = 1;
    m.d_in = 1;
    m.w1 = Mat(1, 1);
    m.w2 = Mat(1, 1);
    m.w3 = {1.0};
    m.b1 = {0.0};
    m.b2 = 0.0;

    WindowSample s;
    s.inputs = Mat(3, 1);
    s.inputs(0, 0) = 0.7;
    s.inputs(1, 0) = -0.3;
    s.inputs(2, 0) = 1.1;
    s.target = 0.5;

    // every step: h = sigmoid(0) = 0.5; prediction = sigmoid(0.5)
    const auto fwd = rnn_forward(m, s);
    CHECK(fwd.prediction == doctest::Approx(0.6224593312018546).epsilon(1e-12));

    // now with nonzero weights, trace two steps by hand
    m.w1(0, 0) = 0.5;
    m.w2(0, 0) = -0.25;
    m.b1 = {0.1};
    m.b2 = 0.2;
    WindowSample two;
    two.inputs = Mat(2, 1);
    two.inputs(0, 0) = 1.0;
    two.inputs(1, 0) = -2.0;
    two.target = 0.0;
    const double h1 = sig(1.0 * 0.5 + 0.1);
    const double h2 = sig(-2.0 * 0.5 + h1 * -0.25 + 0.1);
    const double expect = sig(h2 * 1.0 + 0.2);
    CHECK(rnn_forward(m, two).prediction == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("forward is sensitive to input order") {
    RnnTrainConfig cfg;
    cfg.seed = 77;
    const RnnModel m = init_rnn(cfg, 3);

    std::mt19937_64 rng(9);
    auto s = random_sample(rng, 6, 3);
    const double base = rnn_forward(m, s).prediction;

    auto reversed = s;
    for (std::size_t r = 0; r < s.inputs.rows; ++r)
        for (std::size_t c = 0; c < s.inputs.cols; ++c)
            reversed.inputs(r, c) = s.inputs(s.inputs.rows - 1 - r, c);
    CHECK(rnn_forward(m, reversed).prediction != doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("hidden states stay inside the sigmoid range") {
    RnnTrainConfig cfg;
    cfg.seed = 3;
    cfg.init_scale = 2.0;
    const RnnModel m = init_rnn(cfg, 3);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_sample(rng, 8, 3);
        const auto fwd = rnn_forward(m, s);
        for (double h : fwd.hidden_states.data) {
            CHECK(h > 0.0);
            CHECK(h < 1.0);
        }
    }
}

TEST_CASE("forward rejects mismatched widths") {
    RnnTrainConfig cfg;
    const RnnModel m = init_rnn(cfg, 1);
    std::mt19937_64 rng(5);
    const auto s = random_sample(rng, 4, 3);
    CHECK_THROWS_AS(rnn_forward(m, s), DimensionMismatch);
}

TEST_CASE("backward: zero residual gives zero gradients") {
    RnnTrainConfig cfg;
    cfg.seed = 21;
    const RnnModel m = init_rnn(cfg, 3);
    std::mt19937_64 rng(6);
    auto s = random_sample(rng, 5, 3);
    s.target = rnn_forward(m, s).prediction; // exact hit
    const auto g = rnn_backward(m, s);
    for (double v : gradient_flat(g)) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("backward: k=1 single-unit chain rule by hand") {
    RnnModel m;
    m.hidden = 1;
    m.d_in = 1;
    m.w1 = Mat(1, 1);
    m.w1(0, 0) = 0.8;
    m.w2 = Mat(1, 1);
    m.w2(0, 0) = 0.4; // unused at k=1: previous state is zero
    m.w3 = {-0.6};
    m.b1 = {0.15};
    m.b2 = -0.05;

    WindowSample s;
    s.inputs = Mat(1, 1);
    s.inputs(0, 0) = 1.3;
    s.target = 0.7;

    const double u = 0.8 * 1.3 + 0.15;
    const double h1 = sig(u);
    const double o = h1 * -0.6 - 0.05;
    const double p = sig(o);
    const double d_out = (p - 0.7) * p * (1.0 - p);
    const double dh = -0.6 * d_out;
    const double du = dh * h1 * (1.0 - h1);

    const auto g = rnn_backward(m, s);
    CHECK(g.b2 == doctest::Approx(d_out).epsilon(1e-12));
    CHECK(g.w3[0] == doctest::Approx(h1 * d_out).epsilon(1e-12));
    CHECK(g.b1[0] == doctest::Approx(du).epsilon(1e-12));
    CHECK(g.w1(0, 0) == doctest::Approx(1.3 * du).epsilon(1e-12));
    CHECK(g.w2(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("backward matches finite differences of the forward loss") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        RnnTrainConfig cfg;
        cfg.hidden = 5;
        cfg.seed = 100 + trial;
        RnnModel m = init_rnn(cfg, 3);
        const auto s = random_sample(rng, 3 + trial * 2, 3);

        const auto analytic = gradient_flat(rnn_backward(m, s));
        const auto slots = parameter_slots(m);
        const auto fd = testutil::fd_gradient(
            [&] {
                const double r = rnn_forward(m, s).prediction - s.target;
                return 0.5 * r * r;
            },
            slots);
        REQUIRE(analytic.size() == fd.size());
        for (std::size_t i = 0; i < fd.size(); ++i)
            CHECK(testutil::rel_error(analytic[i], fd[i], 1e-6) < 1e-4);
    }
}

TEST_CASE("train: constant 0.5 target is learned to tiny error") {
    std::mt19937_64 rng(12);
    std::vector<WindowSample> samples;
    for (int i = 0; i < 20; ++i) {
        auto s = random_sample(rng, 4, 3);
        s.target = 0.5;
        samples.push_back(std::move(s));
    }
    RnnTrainConfig cfg;
    cfg.hidden = 10;
    cfg.init_scale = 0.05; // zero-ish start
    cfg.learning_rate = 0.1;
    cfg.epochs = 200;
    cfg.seed = 2;
    const auto m = rnn_train(samples, cfg, 3);
    CHECK(mse(m, samples) < 1e-4);
}

TEST_CASE("train: zero learning rate returns the initial model") {
    std::mt19937_64 rng(13);
    std::vector<WindowSample> samples = {random_sample(rng, 3, 3), random_sample(rng, 3, 3)};
    RnnTrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.epochs = 25;
    cfg.seed = 44;
    const auto trained = rnn_train(samples, cfg, 3);
    const auto initial = init_rnn(cfg, 3);
    CHECK(trained == initial);
}

TEST_CASE("train: same seed, same trajectory") {
    std::mt19937_64 rng(14);
    std::vector<WindowSample> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(random_sample(rng, 5, 3));
    RnnTrainConfig cfg;
    cfg.epochs = 30;
    cfg.seed = 909;
    const auto a = rnn_train(samples, cfg, 3);
    const auto b = rnn_train(samples, cfg, 3);
    CHECK(a == b);
    CHECK_THROWS_AS(rnn_train({}, cfg, 3), EmptyDataset);
}

TEST_CASE("train: final training error never exceeds the initial model's") {
    std::mt19937_64 rng(15);
    for (std::uint64_t seed : {1ull, 7ull, 19ull}) {
        std::vector<WindowSample> samples;
        for (int i = 0; i < 15; ++i) samples.push_back(random_sample(rng, 6, 3));
        RnnTrainConfig cfg;
        cfg.epochs = 60;
        cfg.seed = seed;
        const auto initial = init_rnn(cfg, 3);
        const auto trained = rnn_train(samples, cfg, 3);
        CHECK(mse(trained, samples) <= mse(initial, samples) + 1e-12);
    }
}

TEST_CASE("predict_direction thresholds the regression output") {
    RnnTrainConfig cfg;
    cfg.hidden = 2;
    RnnModel zero = init_rnn(cfg, 3);
    for (auto& v : zero.w1.data) v = 0.0;
    for (auto& v : zero.w2.data) v = 0.0;
    for (auto& v : zero.w3) v = 0.0;
    for (auto& v : zero.b1) v = 0.0;
    zero.b2 = 0.0;

    std::mt19937_64 rng(16);
    const auto s = random_sample(rng, 3, 3);
    CHECK(predict_direction(zero, s) == 0); // prediction exactly 0.5

    auto bullish = zero;
    bullish.b2 = 50.0;
    CHECK(predict_direction(bullish, s) == 1);
}

TEST_CASE("window sample construction over the joined series") {
    const auto rows = testutil::synthetic_joined(30);
    const int k = 5;
    const auto samples = build_window_samples(rows, k, 3);
    REQUIRE(samples.size() == rows.size() - k);

    // first sample covers days 0..k-1 and targets day k
    for (int step = 0; step < k; ++step) {
        CHECK(samples[0].inputs(step, 0) == rows[step].v_norm);
        CHECK(samples[0].inputs(step, 1) == rows[step].z_b);
        CHECK(samples[0].inputs(step, 2) == rows[step].z_n);
    }
    CHECK(samples[0].target == rows[k].v_norm);
    CHECK(samples[0].target_label == rows[k].f);

    // last sample targets the final day
    CHECK(samples.back().target == rows.back().v_norm);

    const auto blind = build_window_samples(rows, k, 1);
    CHECK(blind[0].inputs.cols == 1);
    CHECK(blind[0].inputs(2, 0) == rows[2].v_norm);

    CHECK(build_window_samples(rows, 30, 3).empty());
    CHECK_THROWS_AS(build_window_samples(rows, 0, 3), DomainError);
    CHECK_THROWS_AS(build_window_samples(rows, 5, 2), DomainError);
}

TEST_CASE("d_in=1 models ignore the indicator columns") {
    auto rows_a = testutil::synthetic_joined(40, 50);
    auto rows_b = rows_a;
    for (auto& r : rows_b) { // same volatility, wildly different indicators
        r.z_b = -r.z_b * 3.0 + 1.0;
        r.z_n = r.z_n * 0.1 - 2.0;
    }
    RnnTrainConfig cfg;
    cfg.epochs = 10;
    cfg.seed = 33;
    const auto sa = build_window_samples(rows_a, 4, 1);
    const auto sb = build_window_samples(rows_b, 4, 1);
    const auto m = rnn_train(sa, cfg, 1);
    for (std::size_t i = 0; i < sa.size(); ++i)
        CHECK(rnn_forward(m, sa[i]).prediction == rnn_forward(m, sb[i]).prediction);
}

TEST_CASE("checkpoint round-trip") {
    RnnTrainConfig cfg;
    cfg.k = 7;
    cfg.seed = 1234;
    cfg.epochs = 5;
    std::mt19937_64 rng(18);
    std::vector<WindowSample> samples;
    for (int i = 0; i < 8; ++i) samples.push_back(random_sample(rng, cfg.k, 3));
    const auto m = rnn_train(samples, cfg, 3);

    const char* path = "rnn_checkpoint_test.json";
    save_checkpoint(m, cfg, path);
    RnnTrainConfig loaded_cfg;
    const auto loaded = load_checkpoint(path, &loaded_cfg);
    std::remove(path);

    CHECK(loaded == m);
    CHECK(loaded_cfg.k == cfg.k);
    CHECK(loaded_cfg.seed == cfg.seed);
    CHECK(loaded_cfg.learning_rate == cfg.learning_rate);
}

} // TEST_SUITE
