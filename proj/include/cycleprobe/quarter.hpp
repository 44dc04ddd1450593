#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cycleprobe {

/// Calendar quarter, e.g. 1994:Q1. Ordered chronologically.
class Quarter {
public:
    constexpr Quarter() = default;
    Quarter(int year, int quarter);

    constexpr int year() const noexcept { return year_; }
    constexpr int quarter() const noexcept { return quarter_; }

    /// Quarters elapsed since 0000:Q1; differences of indices are step counts.
    constexpr std::int64_t index() const noexcept {
        return static_cast<std::int64_t>(year_) * 4 + (quarter_ - 1);
    }
    static Quarter from_index(std::int64_t index);

    Quarter operator+(std::int64_t steps) const { return from_index(index() + steps); }
    Quarter operator-(std::int64_t steps) const { return from_index(index() - steps); }
    std::int64_t operator-(const Quarter& other) const noexcept { return index() - other.index(); }

    Quarter successor() const { return *this + 1; }

    /// Formats as `YYYY:Qn`.
    std::string to_string() const;

    /// Parses `YYYY:Qn` with n in 1..4. Returns nullopt for anything else.
    static std::optional<Quarter> parse(std::string_view token);

    friend constexpr bool operator==(const Quarter&, const Quarter&) = default;
    friend constexpr auto operator<=>(const Quarter& a, const Quarter& b) noexcept {
        return a.index() <=> b.index();
    }

private:
    int year_ = 2000;
    int quarter_ = 1;
};

} // namespace cycleprobe
