#include "windspc/types.hpp"

#include <algorithm>

#include "windspc/error.hpp"

namespace windspc {

namespace {

// vib.<channel>.vel or vib.<channel>.acc
struct VibPath {
    std::string_view channel;
    bool velocity = true;
};

std::optional<VibPath> parse_vib_path(std::string_view name) {
    if (!name.starts_with("vib.")) return std::nullopt;
    name.remove_prefix(4);
    if (name.ends_with(".vel")) {
        return VibPath{name.substr(0, name.size() - 4), true};
    }
    if (name.ends_with(".acc")) {
        return VibPath{name.substr(0, name.size() - 4), false};
    }
    return std::nullopt;
}

std::optional<double>* core_field_ptr(ScadaRecord& r, std::string_view name) {
    if (name == "wind_speed") return &r.wind_speed;
    if (name == "env_temp") return &r.env_temp;
    if (name == "nacelle_temp") return &r.nacelle_temp;
    if (name == "gearbox_temp") return &r.gearbox_temp;
    if (name == "bearing_temp") return &r.bearing_temp;
    if (name == "gen1_temp") return &r.gen1_temp;
    if (name == "gen2_temp") return &r.gen2_temp;
    if (name == "oil_temp") return &r.oil_temp;
    if (name == "rotor_speed") return &r.rotor_speed;
    if (name == "generator_speed") return &r.generator_speed;
    if (name == "power_output") return &r.power_output;
    if (name == "pitch_angle") return &r.pitch_angle;
    if (name == "yaw") return &r.yaw;
    return nullptr;
}

}  // namespace

std::optional<OperatingState> operating_state_from_int(long long value) {
    if (value < 0 || value > 3) return std::nullopt;
    return static_cast<OperatingState>(value);
}

const std::vector<std::string>& core_field_names() {
    static const std::vector<std::string> names{
        "wind_speed",      "env_temp",  "nacelle_temp", "gearbox_temp", "bearing_temp",
        "gen1_temp",       "gen2_temp", "oil_temp",     "rotor_speed",  "generator_speed",
        "power_output",    "pitch_angle", "yaw",
    };
    return names;
}

bool is_known_field(std::string_view name) {
    ScadaRecord probe;
    if (core_field_ptr(probe, name) != nullptr) return true;
    auto vib = parse_vib_path(name);
    return vib.has_value() && !vib->channel.empty();
}

std::optional<double> field_value(const ScadaRecord& record, std::string_view name) {
    if (auto* ptr = core_field_ptr(const_cast<ScadaRecord&>(record), name)) return *ptr;
    if (auto vib = parse_vib_path(name)) {
        auto it = record.vibrations.find(vib->channel);
        if (it == record.vibrations.end()) return std::nullopt;
        return vib->velocity ? it->second.velocity : it->second.acceleration;
    }
    fail(Errc::UnknownField, "no such field: " + std::string(name));
}

void set_field_value(ScadaRecord& record, std::string_view name, std::optional<double> value) {
    if (auto* ptr = core_field_ptr(record, name)) {
        *ptr = value;
        return;
    }
    if (auto vib = parse_vib_path(name); vib && !vib->channel.empty()) {
        // Clearing a member of an absent channel must not materialize it.
        if (!value && !record.vibrations.contains(vib->channel)) return;
        auto& reading = record.vibrations[std::string(vib->channel)];
        (vib->velocity ? reading.velocity : reading.acceleration) = value;
        return;
    }
    fail(Errc::UnknownField, "no such field: " + std::string(name));
}

void Dataset::refresh_cadence() {
    if (records.size() < 2) {
        cadence_s = 0;
        return;
    }
    std::vector<std::int64_t> gaps;
    gaps.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) {
        gaps.push_back(records[i].timestamp - records[i - 1].timestamp);
    }
    auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
    std::nth_element(gaps.begin(), mid, gaps.end());
    cadence_s = *mid;
}

std::vector<std::optional<double>> Dataset::column(std::string_view field) const {
    std::vector<std::optional<double>> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(field_value(r, field));
    return out;
}

bool same_records(const Dataset& a, const Dataset& b) {
    return a.records == b.records;
}

}  // namespace windspc
