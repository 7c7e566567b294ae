#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sentivol/date.hpp"

namespace sentivol::corpus {

enum class Polarity { Positive, Negative };

enum class TokenizerMode { Whitespace, CharBigram };
enum class NgramPolicy { Uni, UniAndBi };
enum class Weighting { Tf, TfIdf };

/// One forum message. Posts that enter training or scoring must carry a
/// non-empty token sequence; ingestion enforces that.
struct Post {
    std::string id;
    std::string stock_id;
    Date date;
    std::vector<std::string> tokens;
    std::optional<Polarity> label;
};

/// Term list over a post collection, lexicographically ordered so that the
/// same posts produce the same vocabulary in any input order.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_freq,
               std::size_t corpus_size, NgramPolicy ngram);

    std::size_t size() const { return terms_.size(); }
    std::size_t corpus_size() const { return corpus_size_; }
    NgramPolicy ngram() const { return ngram_; }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<std::uint32_t>& doc_freqs() const { return doc_freq_; }

    std::optional<std::uint32_t> index_of(const std::string& term) const;
    std::uint32_t doc_freq(std::uint32_t index) const { return doc_freq_[index]; }

    /// FNV-1a over ngram policy, corpus size and every (term, doc_freq)
    /// pair. Binds trained models to the exact vocabulary state.
    std::uint64_t fingerprint() const;

private:
    std::vector<std::string> terms_;
    std::vector<std::uint32_t> doc_freq_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::size_t corpus_size_ = 0;
    NgramPolicy ngram_ = NgramPolicy::Uni;
};

/// Sparse non-negative feature vector; entries sorted by term index,
/// zero-valued entries absent.
struct FeatureVector {
    std::vector<std::pair<std::uint32_t, double>> entries;

    double sum() const;
    bool empty() const { return entries.empty(); }
};

/// Whitespace mode splits on Unicode whitespace and strips punctuation from
/// each token; CharBigram emits overlapping codepoint pairs of runs between
/// whitespace (runs shorter than two codepoints emit nothing). Empty output
/// is legal; rejection happens at post construction.
std::vector<std::string> tokenize(const std::string& text, TokenizerMode mode);

/// Terms occurring in at least min_df posts, sorted lexicographically.
/// Bi-grams join adjacent tokens with '_'. Throws EmptyCorpus when no posts
/// are given or nothing survives the threshold.
Vocabulary build_vocabulary(const std::vector<Post>& posts, NgramPolicy ngram,
                            std::uint32_t min_df = 1);

/// Tf: raw in-post term count. TfIdf: count * ln(corpus_size / doc_freq);
/// a term present in every document has idf 0 and drops out. Out-of-vocabulary
/// terms are dropped silently.
FeatureVector featurize(const Post& post, const Vocabulary& vocab, Weighting weighting);

/// Term stream a post contributes under a given n-gram policy (uni-grams
/// plus adjacent '_'-joined bi-grams for UniAndBi).
std::vector<std::string> expand_terms(const std::vector<std::string>& tokens, NgramPolicy ngram);

// Vocabulary persistence (JSON), pipeline plumbing.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

} // namespace sentivol::corpus
