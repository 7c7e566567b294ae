#include <doctest.h>

#include <algorithm>
#include <random>

#include "sentivol/corpus.hpp"
#include "sentivol/errors.hpp"

#include "helpers.hpp"

using namespace sentivol;
using namespace sentivol::corpus;
using testutil::make_post;

TEST_SUITE("corpus") {

TEST_CASE("tokenize whitespace splits and strips punctuation") {
    CHECK(tokenize("buy now strong", TokenizerMode::Whitespace) ==
          std::vector<std::string>{"buy", "now", "strong"});
    CHECK(tokenize("", TokenizerMode::Whitespace).empty());
    CHECK(tokenize("buy, now!  strong...", TokenizerMode::Whitespace) ==
          std::vector<std::string>{"buy", "now", "strong"});
    CHECK(tokenize("  \t\n ", TokenizerMode::Whitespace).empty());
    // fullwidth comma and ideographic space
    CHECK(tokenize("\xE6\xB6\xA8\xEF\xBC\x8C\xE5\x81\x9C\xE3\x80\x80ok",
                   TokenizerMode::Whitespace) ==
          std::vector<std::string>{"\xE6\xB6\xA8\xE5\x81\x9C", "ok"});
}

TEST_CASE("tokenize char bigrams") {
    CHECK(tokenize("abcd", TokenizerMode::CharBigram) ==
          std::vector<std::string>{"ab", "bc", "cd"});
    CHECK(tokenize("", TokenizerMode::CharBigram).empty());
    CHECK(tokenize("ab cd", TokenizerMode::CharBigram) ==
          std::vector<std::string>{"ab", "cd"});
    // runs of a single character yield no pair
    CHECK(tokenize("a b", TokenizerMode::CharBigram).empty());
    // multibyte codepoints pair whole characters, not bytes
    const auto cjk = tokenize("\xE5\xA4\xA7\xE6\xB6\xA8\xE5\x81\x9C", TokenizerMode::CharBigram);
    CHECK(cjk == std::vector<std::string>{"\xE5\xA4\xA7\xE6\xB6\xA8",
                                          "\xE6\xB6\xA8\xE5\x81\x9C"});
}

TEST_CASE("build_vocabulary counts document frequency") {
    const std::vector<Post> posts = {make_post({"a", "b"}), make_post({"b", "c"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::Uni);
    CHECK(vocab.terms() == std::vector<std::string>{"a", "b", "c"});
    CHECK(vocab.corpus_size() == 2);
    CHECK(vocab.doc_freq(*vocab.index_of("b")) == 2);
    CHECK(vocab.doc_freq(*vocab.index_of("a")) == 1);
}

TEST_CASE("build_vocabulary emits bigrams when asked") {
    const std::vector<Post> posts = {make_post({"a", "b"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::UniAndBi);
    CHECK(vocab.terms() == std::vector<std::string>{"a", "a_b", "b"});
}

TEST_CASE("build_vocabulary min_df errors") {
    const std::vector<Post> posts = {make_post({"a"}), make_post({"b"})};
    CHECK_THROWS_AS(build_vocabulary(posts, NgramPolicy::Uni, 2), EmptyCorpus);
    CHECK_THROWS_AS(build_vocabulary({}, NgramPolicy::Uni), EmptyCorpus);
}

TEST_CASE("build_vocabulary is order independent") {
    std::vector<Post> posts;
    for (int i = 0; i < 20; ++i)
        posts.push_back(make_post({"t" + std::to_string(i % 7), "t" + std::to_string(i % 3)}));
    const auto base = build_vocabulary(posts, NgramPolicy::UniAndBi, 2);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(posts.begin(), posts.end(), rng);
        const auto shuffled = build_vocabulary(posts, NgramPolicy::UniAndBi, 2);
        CHECK(shuffled.terms() == base.terms());
        CHECK(shuffled.doc_freqs() == base.doc_freqs());
        CHECK(shuffled.fingerprint() == base.fingerprint());
    }
}

TEST_CASE("featurize term frequency") {
    const std::vector<Post> posts = {make_post({"a", "b"}), make_post({"a"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::Uni);

    const auto fv = featurize(make_post({"a", "a", "b"}), vocab, Weighting::Tf);
    REQUIRE(fv.entries.size() == 2);
    CHECK(fv.entries[0] == std::pair<std::uint32_t, double>{*vocab.index_of("a"), 2.0});
    CHECK(fv.entries[1] == std::pair<std::uint32_t, double>{*vocab.index_of("b"), 1.0});

    // out-of-vocabulary terms silently drop
    const auto oov = featurize(make_post({"a", "z"}), vocab, Weighting::Tf);
    CHECK(oov.entries.size() == 1);
    CHECK(oov.entries[0].first == *vocab.index_of("a"));
}

TEST_CASE("featurize tf-idf drops ubiquitous terms") {
    const std::vector<Post> posts = {make_post({"a", "b"}), make_post({"a"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::Uni);

    const auto fv = featurize(make_post({"a"}), vocab, Weighting::TfIdf);
    CHECK(fv.entries.empty()); // idf of doc_freq==corpus_size is ln(1)=0

    const auto fb = featurize(make_post({"b", "b"}), vocab, Weighting::TfIdf);
    REQUIRE(fb.entries.size() == 1);
    CHECK(fb.entries[0].second == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("featurize is invariant to token order under Tf/Uni") {
    std::vector<Post> posts = {make_post({"a", "b", "c", "d"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::Uni);

    std::vector<std::string> tokens = {"a", "b", "b", "c", "d", "d", "d"};
    const auto base = featurize(make_post(tokens), vocab, Weighting::Tf);
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(tokens.begin(), tokens.end(), rng);
        const auto shuffled = featurize(make_post(tokens), vocab, Weighting::Tf);
        CHECK(shuffled.entries == base.entries);
    }
}

TEST_CASE("tf mass never exceeds token count") {
    std::mt19937 rng(5);
    std::vector<Post> posts;
    for (int i = 0; i < 10; ++i) {
        std::vector<std::string> tokens;
        for (int t = 0; t < 1 + static_cast<int>(rng() % 8); ++t)
            tokens.push_back("w" + std::to_string(rng() % 6));
        posts.push_back(make_post(tokens));
    }
    const auto vocab = build_vocabulary(posts, NgramPolicy::Uni, 2);
    for (const auto& p : posts) {
        const auto fv = featurize(p, vocab, Weighting::Tf);
        CHECK(fv.sum() <= static_cast<double>(p.tokens.size()) + 1e-12);
    }
    // with every token in vocabulary and Uni ngrams, mass equals token count
    const auto full = build_vocabulary(posts, NgramPolicy::Uni, 1);
    for (const auto& p : posts) {
        const auto fv = featurize(p, full, Weighting::Tf);
        CHECK(fv.sum() == doctest::Approx(static_cast<double>(p.tokens.size())));
    }
}

TEST_CASE("vocabulary json round-trip") {
    const std::vector<Post> posts = {make_post({"a", "b"}), make_post({"b", "c"})};
    const auto vocab = build_vocabulary(posts, NgramPolicy::UniAndBi);
    const auto path = "vocab_roundtrip_test.json";
    save_vocabulary(vocab, path);
    const auto loaded = load_vocabulary(path);
    CHECK(loaded.terms() == vocab.terms());
    CHECK(loaded.doc_freqs() == vocab.doc_freqs());
    CHECK(loaded.corpus_size() == vocab.corpus_size());
    CHECK(loaded.ngram() == vocab.ngram());
    CHECK(loaded.fingerprint() == vocab.fingerprint());
    std::remove(path);
}

} // TEST_SUITE
