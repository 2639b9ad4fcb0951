#include "windspc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windspc/error.hpp"

namespace windspc::baseline {

std::vector<ProfilePoint> correlation_profile(const Dataset& d, std::string_view var_a,
                                              std::string_view var_b, std::size_t min_points) {
    if (d.records.empty()) {
        fail(Errc::EmptyInput, "correlation_profile: empty dataset");
    }
    if (min_points < 3) {
        fail(Errc::InvalidParams, "correlation_profile: min_points must be >= 3");
    }
    if (!is_known_field(var_a)) {
        fail(Errc::UnknownField, "correlation_profile: unknown field '" + std::string(var_a) + "'");
    }
    if (!is_known_field(var_b)) {
        fail(Errc::UnknownField, "correlation_profile: unknown field '" + std::string(var_b) + "'");
    }

    std::vector<ProfilePoint> profile;
    profile.reserve(d.records.size());

    // Single-pass running moments (Welford) over pairwise-complete rows.
    std::size_t n = 0;
    double mean_a = 0.0, mean_b = 0.0;
    double m2a = 0.0, m2b = 0.0, cab = 0.0;

    for (const auto& rec : d.records) {
        const auto a = field_value(rec, var_a);
        const auto b = field_value(rec, var_b);
        if (a && b) {
            ++n;
            const double da = *a - mean_a;
            const double db = *b - mean_b;
            mean_a += da / static_cast<double>(n);
            mean_b += db / static_cast<double>(n);
            m2a += da * (*a - mean_a);
            m2b += db * (*b - mean_b);
            cab += da * (*b - mean_b);
        }
        if (n < min_points) continue;
        if (m2a <= 0.0 || m2b <= 0.0) continue;  // zero variance so far: gap
        const double rho = std::clamp(cab / std::sqrt(m2a * m2b), -1.0, 1.0);
        profile.push_back({rec.timestamp, rho});
    }
    return profile;
}

BaselineWindow detect_baseline(const Dataset& d, std::string_view var_a, std::string_view var_b,
                               std::size_t min_points, std::optional<Timestamp> upper_bound) {
    auto profile = correlation_profile(d, var_a, var_b, min_points);
    if (upper_bound) {
        std::erase_if(profile, [&](const ProfilePoint& p) { return p.t > *upper_bound; });
    }
    if (profile.empty()) {
        fail(Errc::NoValidWindow,
             "detect_baseline: no profile point with >= " + std::to_string(min_points) +
                 " observations" + (upper_bound ? " before the upper bound" : ""));
    }

    // Argmax with ties broken toward the latest t (longest baseline).
    std::size_t best = 0;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        if (profile[i].rho >= profile[best].rho) best = i;
    }

    BaselineWindow w;
    w.start = d.records.front().timestamp;
    w.end = profile[best].t;
    w.rho_max = profile[best].rho;
    w.profile = std::move(profile);
    return w;
}

}  // namespace windspc::baseline
