#include "windspc/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "windspc/csv.hpp"
#include "windspc/error.hpp"

namespace windspc {

Schema Schema::canonical(const std::vector<std::string>& vibration_channels) {
    Schema s;
    s.columns.emplace_back("timestamp", "timestamp");
    s.columns.emplace_back("operating_state", "operating_state");
    for (const auto& name : core_field_names()) s.columns.emplace_back(name, name);
    for (const auto& ch : vibration_channels) {
        s.columns.emplace_back("vib." + ch + ".vel", "vib." + ch + ".vel");
        s.columns.emplace_back("vib." + ch + ".acc", "vib." + ch + ".acc");
    }
    return s;
}

const std::string* Schema::column_for(std::string_view logical) const {
    for (const auto& [log, col] : columns) {
        if (log == logical) return &col;
    }
    return nullptr;
}

bool Schema::has(std::string_view logical) const { return column_for(logical) != nullptr; }

namespace {

void validate_schema(const Schema& schema) {
    if (!schema.has("timestamp")) {
        fail(Errc::InvalidConfig, "schema must map the 'timestamp' field");
    }
    for (const auto& [logical, column] : schema.columns) {
        if (logical == "timestamp" || logical == "operating_state") continue;
        if (!is_known_field(logical)) {
            fail(Errc::InvalidConfig, "schema names unknown logical field '" + logical + "'");
        }
        (void)column;
    }
}

}  // namespace

Dataset parse_scada_csv(std::istream& source, const Schema& schema, const ParseOptions& options,
                        ParseStats* stats) {
    validate_schema(schema);

    std::string line;
    if (!std::getline(source, line)) fail(Errc::EmptyInput, "no header row");
    const std::vector<std::string> header = csv::split_line(line);

    // logical field -> column index
    std::vector<std::pair<std::string, std::size_t>> field_cols;
    std::set<std::size_t> used;
    for (const auto& [logical, column] : schema.columns) {
        auto it = std::find(header.begin(), header.end(), column);
        if (it == header.end()) {
            fail(Errc::MissingColumn, "column '" + column + "' (field '" + logical +
                                          "') not found in header");
        }
        std::size_t idx = static_cast<std::size_t>(it - header.begin());
        field_cols.emplace_back(logical, idx);
        used.insert(idx);
    }

    ParseStats local;
    local.ignored_columns = header.size() - used.size();

    struct Row {
        ScadaRecord record;
        std::size_t order;  // position among successfully parsed rows
        std::size_t missing;
    };
    std::vector<Row> rows;

    while (std::getline(source, line)) {
        if (csv::trim(line).empty()) continue;
        ++local.total_rows;
        std::vector<std::string> cells = csv::split_line(line);

        ScadaRecord record;
        bool timestamp_ok = false;
        std::size_t row_missing = 0;
        for (const auto& [logical, idx] : field_cols) {
            std::string_view cell = idx < cells.size() ? std::string_view(cells[idx]) : "";
            if (logical == "timestamp") {
                if (auto ts = parse_iso8601(csv::trim(cell))) {
                    record.timestamp = *ts;
                    timestamp_ok = true;
                }
            } else if (logical == "operating_state") {
                if (auto v = csv::parse_int(cell)) {
                    record.operating_state = operating_state_from_int(*v);
                    if (!record.operating_state) ++row_missing;  // out-of-range state
                } else if (!csv::trim(cell).empty()) {
                    ++row_missing;  // unparseable state becomes missing
                }
            } else {
                auto v = csv::parse_double(cell);
                if (!v) ++row_missing;
                set_field_value(record, logical, v);
            }
        }
        if (!timestamp_ok) {
            ++local.rejected_bad_timestamp;
            continue;
        }
        rows.push_back(Row{std::move(record), rows.size(), row_missing});
    }

    if (local.total_rows == 0) fail(Errc::EmptyInput, "no data rows");

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.record.timestamp < b.record.timestamp;
    });
    for (std::size_t pos = 0; pos < rows.size(); ++pos) {
        auto displacement = static_cast<long long>(pos) - static_cast<long long>(rows[pos].order);
        if (std::llabs(displacement) > options.reorder_buffer) {
            fail(Errc::NonMonotoneTimestamps,
                 "row displaced " + std::to_string(std::llabs(displacement)) +
                     " positions exceeds reorder buffer of " +
                     std::to_string(options.reorder_buffer));
        }
    }

    Dataset d;
    d.records.reserve(rows.size());
    for (auto& row : rows) {
        if (!d.records.empty() && row.record.timestamp == d.records.back().timestamp) {
            ++local.rejected_duplicate;
            continue;
        }
        local.missing_cells += row.missing;
        d.records.push_back(std::move(row.record));
    }
    local.parsed_rows = d.records.size();
    d.refresh_cadence();

    if (stats) *stats = local;
    return d;
}

Dataset load_scada_csv(const std::filesystem::path& path, const Schema& schema,
                       const ParseOptions& options, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open '" + path.string() + "'");
    Dataset d = parse_scada_csv(in, schema, options, stats);
    d.provenance = "path:" + path.string();
    return d;
}

void write_scada_csv(const Dataset& d, const Schema& schema, std::ostream& out) {
    validate_schema(schema);
    std::vector<std::string> row;
    row.reserve(schema.columns.size());
    for (const auto& [logical, column] : schema.columns) {
        (void)logical;
        row.push_back(column);
    }
    csv::write_row(out, row);

    for (const auto& record : d.records) {
        row.clear();
        for (const auto& [logical, column] : schema.columns) {
            (void)column;
            if (logical == "timestamp") {
                row.push_back(format_iso8601(record.timestamp));
            } else if (logical == "operating_state") {
                row.push_back(record.operating_state
                                  ? std::to_string(static_cast<int>(*record.operating_state))
                                  : std::string());
            } else {
                auto v = field_value(record, logical);
                row.push_back(v ? csv::format_double(*v) : std::string());
            }
        }
        csv::write_row(out, row);
    }
}

void save_scada_csv(const Dataset& d, const Schema& schema, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot write '" + path.string() + "'");
    write_scada_csv(d, schema, out);
}

Dataset filter_running(const Dataset& d) {
    Dataset out;
    out.provenance = d.provenance;
    for (const auto& record : d.records) {
        if (record.operating_state == OperatingState::Run) out.records.push_back(record);
    }
    out.refresh_cadence();
    return out;
}

Dataset subsample(const Dataset& d, std::int64_t interval_s) {
    if (interval_s <= 0 || (d.cadence_s > 0 && interval_s < d.cadence_s)) {
        fail(Errc::InvalidInterval, "interval " + std::to_string(interval_s) +
                                        "s below native cadence " + std::to_string(d.cadence_s) +
                                        "s");
    }
    Dataset out;
    out.provenance = d.provenance;
    out.cadence_s = interval_s;
    if (d.records.empty()) return out;

    const Timestamp t0 = d.records.front().timestamp;
    std::size_t i = 0;
    std::int64_t k = 0;
    while (i < d.records.size()) {
        const Timestamp grid = t0 + k * interval_s;
        while (i < d.records.size() && d.records[i].timestamp < grid) ++i;
        if (i == d.records.size()) break;
        const Timestamp ts = d.records[i].timestamp;
        if (ts < grid + interval_s) {
            out.records.push_back(d.records[i]);
            ++k;
        } else {
            // jump past the empty grid windows inside the gap
            k = (ts - t0) / interval_s;
        }
    }
    return out;
}

}  // namespace windspc
