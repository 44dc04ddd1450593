#include "cycleprobe/quarter.hpp"

#include "cycleprobe/error.hpp"

#include <charconv>

namespace cycleprobe {

Quarter::Quarter(int year, int quarter) : year_(year), quarter_(quarter) {
    if (quarter < 1 || quarter > 4) {
        throw Error(ErrorCode::InvalidArgument,
                    "quarter must be in 1..4, got " + std::to_string(quarter));
    }
}

Quarter Quarter::from_index(std::int64_t index) {
    // floor division so that negative years still map onto Q1..Q4
    std::int64_t year = index >= 0 ? index / 4 : -((-index + 3) / 4);
    int q = static_cast<int>(index - year * 4) + 1;
    return Quarter(static_cast<int>(year), q);
}

std::string Quarter::to_string() const {
    std::string year = std::to_string(year_);
    if (year.size() < 4) year.insert(0, 4 - year.size(), '0');
    return year + ":Q" + std::to_string(quarter_);
}

std::optional<Quarter> Quarter::parse(std::string_view token) {
    if (token.size() != 7 || token[4] != ':' || token[5] != 'Q') return std::nullopt;
    for (std::size_t i = 0; i < 4; ++i) {
        if (token[i] < '0' || token[i] > '9') return std::nullopt;
    }
    int year = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + 4, year);
    if (ec != std::errc{} || ptr != token.data() + 4) return std::nullopt;
    char q = token[6];
    if (q < '1' || q > '4') return std::nullopt;
    return Quarter(year, q - '0');
}

} // namespace cycleprobe
