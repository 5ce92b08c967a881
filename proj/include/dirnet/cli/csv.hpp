// csv.hpp: plot-ready tables

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirnet::cli {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Shortest round-trip decimal form (up to 17 significant digits).
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

}  // namespace dirnet::cli
