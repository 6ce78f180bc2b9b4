#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvregret/errors.hpp"

namespace nvregret {

// Rectangular CSV with a mandatory header row; empty cells model
// unattainable entries. Values render via shortest round-trip formatting,
// UTF-8 with LF line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;

    std::string to_string() const;
};

// Parses a table previously produced by to_string(). Throws
// invalid_input_error on ragged rows or a missing header.
CsvTable parse_csv(const std::string& text);

// Writes the table to path; throws invalid_input_error on I/O failure.
void write_csv(const CsvTable& table, const std::string& path);

} // namespace nvregret
