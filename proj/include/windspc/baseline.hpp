#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "windspc/time.hpp"
#include "windspc/types.hpp"

namespace windspc::baseline {

struct ProfilePoint {
    Timestamp t = 0;
    double rho = 0.0;

    bool operator==(const ProfilePoint&) const = default;
};

// Phase I (in-control) window [start, end] chosen by maximizing the running
// correlation of a reference variable pair.
struct BaselineWindow {
    Timestamp start = 0;   // T0: first record of the dataset
    Timestamp end = 0;     // t*: argmax of the profile
    std::vector<ProfilePoint> profile;
    double rho_max = 0.0;
};

// Running Pearson correlation rho(t) of (var_a, var_b) over [T0, t], one entry
// per record time once at least min_points pairwise-complete observations have
// accumulated. Times where either variable so far has zero variance are
// emitted as gaps, not errors.
std::vector<ProfilePoint> correlation_profile(const Dataset& d, std::string_view var_a,
                                              std::string_view var_b,
                                              std::size_t min_points = 100);

// t* = argmax rho(t) over the profile, optionally truncated to t <= upper_bound.
// Ties break toward the latest t (longest baseline).
BaselineWindow detect_baseline(const Dataset& d, std::string_view var_a, std::string_view var_b,
                               std::size_t min_points = 100,
                               std::optional<Timestamp> upper_bound = std::nullopt);

}  // namespace windspc::baseline
