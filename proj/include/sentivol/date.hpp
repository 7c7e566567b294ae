#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace sentivol {

/// Calendar date. Only valid dates can be constructed through parse();
/// aggregate construction is used by tests and generators that already
/// know their values are valid.
struct Date {
    int year = 1970;
    int month = 1; // 1..12
    int day = 1;   // 1..31

    auto operator<=>(const Date&) const = default;

    bool is_valid() const;

    /// Days since 1970-01-01 (civil calendar, negative before epoch).
    std::int64_t day_number() const;

    /// 0 = Sunday .. 6 = Saturday.
    int weekday() const;

    bool is_weekend() const { int w = weekday(); return w == 0 || w == 6; }

    /// Next calendar day.
    Date next() const;

    std::string to_string() const; // YYYY-MM-DD

    /// Strict ISO-8601 "YYYY-MM-DD"; nullopt on malformed or invalid dates.
    static std::optional<Date> parse(const std::string& s);

    static Date from_day_number(std::int64_t days);
};

} // namespace sentivol
