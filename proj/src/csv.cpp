#include "nvregret/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nvregret/literal.hpp"

namespace nvregret {

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << format_double(*row[i]);
        }
        out << '\n';
    }
    return out.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw invalid_input_error("csv: missing header row");
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) table.header.push_back(cell);
        if (!line.empty() && line.back() == ',') table.header.push_back("");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::optional<double>> row;
        std::string::size_type pos = 0;
        while (true) {
            auto next = line.find(',', pos);
            std::string cell = line.substr(pos, next == std::string::npos ? next : next - pos);
            if (cell.empty()) {
                row.emplace_back(std::nullopt);
            } else {
                char* end = nullptr;
                double v = std::strtod(cell.c_str(), &end);
                if (end != cell.c_str() + cell.size())
                    throw invalid_input_error("csv: malformed number: " + cell);
                row.emplace_back(v);
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (row.size() != table.header.size())
            throw invalid_input_error("csv: ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_csv(const CsvTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input_error("csv: cannot open " + path + " for writing");
    out << table.to_string();
    out.flush();
    if (!out) throw invalid_input_error("csv: write failed for " + path);
}

} // namespace nvregret
