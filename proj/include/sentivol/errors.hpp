#pragma once

#include <stdexcept>
#include <string>

namespace sentivol {

// Root of the library's error hierarchy. The CLI maps DataError to exit
// code 1 and ConfigError to exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// corpus
struct EmptyCorpus : DataError {
    EmptyCorpus() : DataError("empty corpus: no posts or no term survives min_df") {}
};

// sentiment
struct DimensionMismatch : DataError {
    explicit DimensionMismatch(const std::string& what) : DataError("dimension mismatch: " + what) {}
};
struct EmptyDataset : DataError {
    EmptyDataset() : DataError("empty dataset") {}
};
struct UnlabeledPost : DataError {
    explicit UnlabeledPost(const std::string& id) : DataError("unlabeled post: " + id) {}
};
struct DegenerateLabels : DataError {
    DegenerateLabels() : DataError("degenerate labels: need at least one positive and one negative post") {}
};
struct IoFailure : DataError {
    explicit IoFailure(const std::string& what) : DataError("io failure: " + what) {}
};

// indicators
struct DomainError : DataError {
    explicit DomainError(const std::string& what) : DataError("domain error: " + what) {}
};
struct IndexOutOfRange : DataError {
    explicit IndexOutOfRange(const std::string& what) : DataError("index out of range: " + what) {}
};
struct EmptyCalendar : DataError {
    EmptyCalendar() : DataError("empty trading-day calendar") {}
};

// market
struct NonPositivePrice : DataError {
    explicit NonPositivePrice(const std::string& what) : DataError("non-positive price: " + what) {}
};
struct DegenerateRange : DataError {
    DegenerateRange() : DataError("degenerate range: max must exceed min") {}
};
struct EmptyIntersection : DataError {
    EmptyIntersection() : DataError("empty intersection: no dates shared between series") {}
};

// eval
struct LengthMismatch : DataError {
    explicit LengthMismatch(const std::string& what) : DataError("length mismatch: " + what) {}
};
struct EmptyVector : DataError {
    EmptyVector() : DataError("empty vector") {}
};
struct InsufficientData : DataError {
    explicit InsufficientData(const std::string& what) : DataError("insufficient data: " + what) {}
};
struct MissingCell : DataError {
    explicit MissingCell(const std::string& what) : DataError("missing cell: " + what) {}
};
struct DegenerateSeries : DataError {
    DegenerateSeries() : DataError("degenerate series: zero variance") {}
};

// ingestion
struct DuplicateDate : DataError {
    explicit DuplicateDate(const std::string& date) : DataError("duplicate date: " + date) {}
};
struct NoValidPosts : DataError {
    NoValidPosts() : DataError("no valid posts in input") {}
};
struct InvalidSpec : ConfigError {
    explicit InvalidSpec(const std::string& what) : ConfigError("invalid synthetic spec: " + what) {}
};

} // namespace sentivol
