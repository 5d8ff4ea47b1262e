#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relspace::csv {

// Comma-separated, header row mandatory, "." decimal separator. Fields may be
// double-quoted with "" as an embedded quote.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

Table read(std::istream& in);
Table read_file(const std::string& path);

std::vector<std::string> split_line(std::string_view line);
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest representation that parses back to the identical double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

}  // namespace relspace::csv
