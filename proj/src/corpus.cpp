#include "sentivol/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "sentivol/errors.hpp"

namespace sentivol::corpus {

namespace {

// Minimal UTF-8 decoding; malformed bytes fall back to single-byte
// codepoints so tokenization never throws.
std::uint32_t next_codepoint(const std::string& s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) { i += 1; return c; }
    int len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
    if (len == 1 || i + len > s.size()) { i += 1; return c; }
    std::uint32_t cp = c & (0xFF >> (len + 1));
    for (int k = 1; k < len; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xC0) != 0x80) { i += 1; return c; }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += len;
    return cp;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_space_cp(std::uint32_t cp) {
    switch (cp) {
        case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
        case 0x0085: case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punct_cp(std::uint32_t cp) {
    if (cp < 0x80)
        return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
               (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
    switch (cp) {
        // common CJK / fullwidth punctuation
        case 0x3001: case 0x3002: case 0x3008: case 0x3009: case 0x300A: case 0x300B:
        case 0x300C: case 0x300D: case 0x300E: case 0x300F: case 0x3010: case 0x3011:
        case 0xFF01: case 0xFF08: case 0xFF09: case 0xFF0C: case 0xFF0E: case 0xFF1A:
        case 0xFF1B: case 0xFF1F: case 0x2018: case 0x2019: case 0x201C: case 0x201D:
        case 0x2026: case 0x00B7:
            return true;
        default:
            return false;
    }
}

std::vector<std::uint32_t> decode(const std::string& text) {
    std::vector<std::uint32_t> cps;
    cps.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) cps.push_back(next_codepoint(text, i));
    return cps;
}

} // namespace

std::vector<std::string> tokenize(const std::string& text, TokenizerMode mode) {
    std::vector<std::string> out;
    const auto cps = decode(text);

    if (mode == TokenizerMode::Whitespace) {
        std::string cur;
        auto flush = [&] {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        };
        for (std::uint32_t cp : cps) {
            if (is_space_cp(cp)) { flush(); continue; }
            if (is_punct_cp(cp)) continue;
            append_utf8(cur, cp);
        }
        flush();
        return out;
    }

    // CharBigram: overlapping codepoint pairs within whitespace-separated runs.
    std::vector<std::uint32_t> run;
    auto flush_run = [&] {
        for (std::size_t i = 0; i + 1 < run.size(); ++i) {
            std::string pair;
            append_utf8(pair, run[i]);
            append_utf8(pair, run[i + 1]);
            out.push_back(std::move(pair));
        }
        run.clear();
    };
    for (std::uint32_t cp : cps) {
        if (is_space_cp(cp)) { flush_run(); continue; }
        run.push_back(cp);
    }
    flush_run();
    return out;
}

std::vector<std::string> expand_terms(const std::vector<std::string>& tokens, NgramPolicy ngram) {
    std::vector<std::string> terms = tokens;
    if (ngram == NgramPolicy::UniAndBi) {
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
            terms.push_back(tokens[i] + "_" + tokens[i + 1]);
    }
    return terms;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_freq,
                       std::size_t corpus_size, NgramPolicy ngram)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)),
      corpus_size_(corpus_size), ngram_(ngram) {
    index_.reserve(terms_.size());
    for (std::uint32_t i = 0; i < terms_.size(); ++i) index_[terms_[i]] = i;
}

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t Vocabulary::fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix_byte = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    auto mix_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(v >> (8 * i)));
    };
    mix_byte(ngram_ == NgramPolicy::Uni ? 1 : 2);
    mix_u64(corpus_size_);
    for (std::uint32_t i = 0; i < terms_.size(); ++i) {
        for (char c : terms_[i]) mix_byte(static_cast<unsigned char>(c));
        mix_byte(0);
        mix_u64(doc_freq_[i]);
    }
    return h;
}

Vocabulary build_vocabulary(const std::vector<Post>& posts, NgramPolicy ngram,
                            std::uint32_t min_df) {
    if (posts.empty()) throw EmptyCorpus{};

    std::map<std::string, std::uint32_t> df; // ordered: gives the sorted term list for free
    for (const Post& p : posts) {
        std::set<std::string> seen;
        for (auto& t : expand_terms(p.tokens, ngram)) seen.insert(std::move(t));
        for (const auto& t : seen) ++df[t];
    }

    std::vector<std::string> terms;
    std::vector<std::uint32_t> freqs;
    for (auto& [term, f] : df) {
        if (f >= min_df) {
            terms.push_back(term);
            freqs.push_back(f);
        }
    }
    if (terms.empty()) throw EmptyCorpus{};
    return Vocabulary{std::move(terms), std::move(freqs), posts.size(), ngram};
}

FeatureVector featurize(const Post& post, const Vocabulary& vocab, Weighting weighting) {
    std::map<std::uint32_t, double> counts;
    for (const auto& term : expand_terms(post.tokens, vocab.ngram())) {
        if (auto idx = vocab.index_of(term)) counts[*idx] += 1.0;
    }

    FeatureVector fv;
    fv.entries.reserve(counts.size());
    const double m = static_cast<double>(vocab.corpus_size());
    for (auto [idx, count] : counts) {
        double value = count;
        if (weighting == Weighting::TfIdf)
            value = count * std::log(m / static_cast<double>(vocab.doc_freq(idx)));
        if (value > 0.0) fv.entries.emplace_back(idx, value);
    }
    return fv;
}

double FeatureVector::sum() const {
    double s = 0.0;
    for (auto& [idx, v] : entries) s += v;
    return s;
}

void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
    nlohmann::json j;
    j["ngram"] = vocab.ngram() == NgramPolicy::Uni ? "uni" : "uni_bi";
    j["corpus_size"] = vocab.corpus_size();
    j["terms"] = vocab.terms();
    j["doc_freq"] = vocab.doc_freqs();
    std::ofstream out(path);
    if (!out) throw IoFailure{"cannot open " + path + " for writing"};
    out << j.dump(2) << "\n";
    if (!out) throw IoFailure{"write failed: " + path};
}

Vocabulary load_vocabulary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure{"cannot open " + path};
    nlohmann::json j;
    try {
        in >> j;
        auto terms = j.at("terms").get<std::vector<std::string>>();
        auto freqs = j.at("doc_freq").get<std::vector<std::uint32_t>>();
        auto corpus_size = j.at("corpus_size").get<std::size_t>();
        auto ngram = j.at("ngram").get<std::string>() == "uni" ? NgramPolicy::Uni
                                                               : NgramPolicy::UniAndBi;
        if (terms.size() != freqs.size() || corpus_size < 1)
            throw IoFailure{"vocabulary file corrupt: " + path};
        for (auto f : freqs)
            if (f < 1 || f > corpus_size)
                throw IoFailure{"vocabulary file corrupt: " + path};
        return Vocabulary{std::move(terms), std::move(freqs), corpus_size, ngram};
    } catch (const nlohmann::json::exception& e) {
        throw IoFailure{"bad vocabulary file " + path + ": " + e.what()};
    }
}

} // namespace sentivol::corpus
