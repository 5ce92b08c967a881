// csv.cpp

#include "dirnet/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "dirnet/cli/range.hpp"
#include "dirnet/errors.hpp"

namespace dirnet::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general,
                                         std::numeric_limits<double>::max_digits10);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) return t;
    for (auto cell : split(line, ',')) t.header.emplace_back(cell);
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<double> row;
        for (auto cell : split(line, ',')) {
            if (cell == "nan") row.push_back(std::numeric_limits<double>::quiet_NaN());
            else if (cell == "inf") row.push_back(std::numeric_limits<double>::infinity());
            else if (cell == "-inf") row.push_back(-std::numeric_limits<double>::infinity());
            else row.push_back(parse_real(cell));
        }
        if (row.size() != t.header.size()) throw UsageError("CSV row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace dirnet::cli
