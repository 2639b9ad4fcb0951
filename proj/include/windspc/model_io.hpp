#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "windspc/baseline.hpp"
#include "windspc/regress.hpp"
#include "windspc/simulate.hpp"
#include "windspc/spc.hpp"

namespace windspc::io {

// Ordered JSON keeps key order stable so rewritten artifacts are byte-identical.
using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "windspc/1";

ordered_json model_to_json(const regress::RegressionModel& m);
regress::RegressionModel model_from_json(const ordered_json& j);

ordered_json chart_to_json(const spc::ControlChart& c);
spc::ControlChart chart_from_json(const ordered_json& j);

// The profile itself is exported separately as CSV; only the window summary
// round-trips through JSON.
ordered_json window_to_json(const baseline::BaselineWindow& w);
baseline::BaselineWindow window_from_json(const ordered_json& j);

ordered_json links_to_json(const std::vector<sim::LinearLink>& links);
std::vector<sim::LinearLink> links_from_json(const ordered_json& j);

void write_json_file(const std::filesystem::path& path, const ordered_json& j);
ordered_json read_json_file(const std::filesystem::path& path);

// Throws IoError unless j has the expected format marker and kind.
void expect_kind(const ordered_json& j, std::string_view kind);

}  // namespace windspc::io
