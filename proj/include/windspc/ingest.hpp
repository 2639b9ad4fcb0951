#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "windspc/types.hpp"

namespace windspc {

// Maps logical field names to CSV column headers, in serialization order.
// "timestamp" is required; "operating_state" is optional but normally
// present; remaining entries are numeric fields (core names or
// vib.<channel>.vel/.acc paths). Columns not named by the schema are ignored
// on input with a count.
struct Schema {
    std::vector<std::pair<std::string, std::string>> columns;

    static Schema canonical(const std::vector<std::string>& vibration_channels = {});

    const std::string* column_for(std::string_view logical) const;
    bool has(std::string_view logical) const;
};

struct ParseOptions {
    // Maximum positions a row may sit away from its timestamp-sorted
    // position. 0 requires strictly increasing timestamps; field loggers
    // occasionally misorder, so this is configurable.
    int reorder_buffer = 0;
};

struct ParseStats {
    std::size_t total_rows = 0;            // data rows seen
    std::size_t parsed_rows = 0;           // rows that became records
    std::size_t rejected_bad_timestamp = 0;
    std::size_t rejected_duplicate = 0;    // later rows with an already-seen timestamp
    std::size_t ignored_columns = 0;       // header columns not in the schema
    // Cells in accepted rows that stored no value (empty, unparseable, or an
    // out-of-range operating state).
    std::size_t missing_cells = 0;
};

// Parses header + data rows into a Dataset sorted by timestamp. Unparseable
// numeric cells become missing values; rows with unparseable or duplicate
// timestamps are rejected and counted; parsed + rejected always equals
// total_rows.
//
// Throws MissingColumn, EmptyInput, NonMonotoneTimestamps.
Dataset parse_scada_csv(std::istream& source, const Schema& schema,
                        const ParseOptions& options = {}, ParseStats* stats = nullptr);

Dataset load_scada_csv(const std::filesystem::path& path, const Schema& schema,
                       const ParseOptions& options = {}, ParseStats* stats = nullptr);

// Serializes in schema column order, ISO-8601 timestamps, '.' decimals,
// empty cells for missing values. parse(write(d)) reproduces d's records
// exactly.
void write_scada_csv(const Dataset& d, const Schema& schema, std::ostream& out);
void save_scada_csv(const Dataset& d, const Schema& schema, const std::filesystem::path& path);

// Keeps only records in operating state Run; order preserved; idempotent.
Dataset filter_running(const Dataset& d);

// First record at or after each grid point start + k*interval. Grid points
// whose window [g, g+interval) holds no record are skipped. interval must be
// at least the native cadence.
Dataset subsample(const Dataset& d, std::int64_t interval_s);

}  // namespace windspc
