#include "relspace/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "relspace/error.hpp"

namespace relspace {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::EmptyRowOrColumn: return "EmptyRowOrColumn";
    case ErrorCode::BadGroupId: return "BadGroupId";
    case ErrorCode::YearNotFound: return "YearNotFound";
    case ErrorCode::DegenerateTotals: return "DegenerateTotals";
    case ErrorCode::RegistryMismatch: return "RegistryMismatch";
    case ErrorCode::NonIncreasingYears: return "NonIncreasingYears";
    case ErrorCode::TooFewYears: return "TooFewYears";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyRcaMatrix: return "EmptyRcaMatrix";
    case ErrorCode::PeriodMismatch: return "PeriodMismatch";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::MissingUpstream: return "MissingUpstream";
    case ErrorCode::BadFlag: return "BadFlag";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace relspace

namespace relspace::csv {

std::optional<std::size_t> Table::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::vector<std::string> split_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    if (quoted)
        throw Error(ErrorCode::ParseError, "unterminated quote in line: " + std::string(line));
    fields.push_back(std::move(field));
    return fields;
}

Table read(std::istream& in)
{
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!have_header) {
            // UTF-8 byte order mark
            if (line.rfind("\xEF\xBB\xBF", 0) == 0)
                line.erase(0, 3);
            table.header = split_line(line);
            have_header = true;
            continue;
        }
        if (line.empty())
            continue;
        table.rows.push_back(split_line(line));
    }
    if (!have_header)
        throw Error(ErrorCode::MissingColumn, "empty CSV input: header row is mandatory");
    return table;
}

Table read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    return read(in);
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

std::string format_double(double value)
{
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc())
        throw Error(ErrorCode::Io, "cannot format double");
    return std::string(buffer, end);
}

namespace {

std::string_view trim(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
        text.remove_suffix(1);
    return text;
}

}  // namespace

std::optional<double> parse_double(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    if (text.empty())
        return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

std::optional<long long> parse_int(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        return std::nullopt;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        return std::nullopt;
    return value;
}

}  // namespace relspace::csv
