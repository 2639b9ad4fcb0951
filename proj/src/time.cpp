#include "windspc/time.hpp"

#include <array>
#include <cstdio>

namespace windspc {

namespace {

bool parse_digits(std::string_view s, std::size_t offset, std::size_t len, int& out) {
    if (offset + len > s.size()) return false;
    int value = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[offset + i];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    out = value;
    return true;
}

// Days from 1970-01-01 for a proleptic Gregorian civil date (Howard Hinnant's
// algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2) return leap ? 29 : 28;
    return kDays[static_cast<std::size_t>(month - 1)];
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text) {
    if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);

    int year = 0, month = 0, day = 0;
    if (!parse_digits(text, 0, 4, year) || text.size() < 10 || text[4] != '-' || text[7] != '-' ||
        !parse_digits(text, 5, 2, month) || !parse_digits(text, 8, 2, day)) {
        return std::nullopt;
    }
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
        return std::nullopt;
    }

    int hour = 0, minute = 0, second = 0;
    if (text.size() > 10) {
        if (text.size() != 19 || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
        if (!parse_digits(text, 11, 2, hour) || text[13] != ':' ||
            !parse_digits(text, 14, 2, minute) || text[16] != ':' ||
            !parse_digits(text, 17, 2, second)) {
            return std::nullopt;
        }
        if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    }

    return days_from_civil(year, month, day) * 86400 +
           static_cast<Timestamp>(hour) * 3600 + minute * 60 + second;
}

std::string format_iso8601(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

}  // namespace windspc
