#include "relspace/trade_panel.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>

#include "relspace/csv.hpp"
#include "relspace/matrix_io.hpp"

namespace relspace {

namespace fs = std::filesystem;

ExportPanel::ExportPanel(ProductRegistryPtr products, CountryRegistryPtr countries,
                         std::map<int, Eigen::MatrixXd> values, bool exclude_empty)
    : products_(std::move(products)), countries_(std::move(countries)), values_(std::move(values))
{
    if (!products_ || !countries_ || products_->size() == 0 || countries_->size() == 0)
        throw Error(ErrorCode::EmptyRowOrColumn, "panel needs at least one product and one country");
    const auto m = static_cast<Eigen::Index>(products_->size());
    const auto n = static_cast<Eigen::Index>(countries_->size());
    for (const auto& [year, e] : values_) {
        if (e.rows() != m || e.cols() != n)
            throw Error(ErrorCode::ShapeMismatch,
                        "year " + std::to_string(year) + " matrix does not match registries");
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < m; ++i) {
                double v = e(i, j);
                if (!std::isfinite(v))
                    throw Error(ErrorCode::ParseError, "non-finite export value in year " +
                                                           std::to_string(year));
                if (v < 0.0)
                    throw Error(ErrorCode::NegativeValue,
                                "year " + std::to_string(year) + ", product " +
                                    products_->code(i) + ", country " + countries_->code(j));
            }

        YearExclusion excluded;
        excluded.year = year;
        Eigen::VectorXd row_totals = e.rowwise().sum();
        Eigen::RowVectorXd column_totals = e.colwise().sum();
        for (Eigen::Index i = 0; i < m; ++i)
            if (!(row_totals(i) > 0.0))
                excluded.products.push_back(products_->code(i));
        for (Eigen::Index j = 0; j < n; ++j)
            if (!(column_totals(j) > 0.0))
                excluded.countries.push_back(countries_->code(j));
        if (excluded.empty())
            continue;
        if (!exclude_empty) {
            std::string what = !excluded.products.empty() ? "product " + excluded.products.front()
                                                          : "country " + excluded.countries.front();
            throw Error(ErrorCode::EmptyRowOrColumn,
                        "year " + std::to_string(year) + ": " + what + " has no positive exports");
        }
        if (excluded.products.size() == products_->size() ||
            excluded.countries.size() == countries_->size())
            throw Error(ErrorCode::EmptyRowOrColumn,
                        "year " + std::to_string(year) + " has no positive exports at all");
        exclusions_.push_back(std::move(excluded));
    }
}

std::vector<int> ExportPanel::years() const
{
    std::vector<int> out;
    for (const auto& entry : values_)
        out.push_back(entry.first);
    return out;
}

const Eigen::MatrixXd& ExportPanel::values(int year) const
{
    auto it = values_.find(year);
    if (it == values_.end())
        throw Error(ErrorCode::YearNotFound, std::to_string(year));
    return it->second;
}

const YearExclusion* ExportPanel::exclusion(int year) const
{
    for (const auto& e : exclusions_)
        if (e.year == year)
            return &e;
    return nullptr;
}

namespace {

std::size_t require_column(const csv::Table& table, std::string_view name)
{
    auto column = table.column(name);
    if (!column)
        throw Error(ErrorCode::MissingColumn, std::string(name));
    return *column;
}

const std::string& field(const std::vector<std::string>& row, std::size_t index, std::size_t line)
{
    if (index >= row.size())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + " is too short");
    return row[index];
}

}  // namespace

ExportPanel ingest_exports(std::istream& in, const IngestOptions& options)
{
    const csv::Table table = csv::read(in);
    const std::size_t year_col = require_column(table, "year");
    const std::size_t country_col = require_column(table, "country");
    const std::size_t product_col = require_column(table, "product");
    const std::size_t value_col = require_column(table, "value");

    using Key = std::tuple<int, std::string, std::string>;
    std::map<Key, double> cells;
    std::set<std::string> product_codes;
    std::set<std::string> country_codes;
    std::set<int> years;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = r + 2;
        auto year = csv::parse_int(field(row, year_col, line));
        if (!year)
            throw Error(ErrorCode::ParseError, "bad year on line " + std::to_string(line));
        const std::string& country = field(row, country_col, line);
        const std::string& product = field(row, product_col, line);
        if (country.empty() || product.empty())
            throw Error(ErrorCode::ParseError, "empty code on line " + std::to_string(line));
        const std::string& text = field(row, value_col, line);
        auto value = csv::parse_double(text);
        if (!value || std::isnan(*value) || std::isinf(*value))
            throw Error(ErrorCode::ParseError,
                        "bad value '" + text + "' on line " + std::to_string(line));
        if (*value < 0.0)
            throw Error(ErrorCode::NegativeValue, "value " + text + " on line " +
                                                      std::to_string(line));

        Key key{static_cast<int>(*year), country, product};
        auto [it, inserted] = cells.emplace(key, *value);
        if (!inserted) {
            if (!options.sum_duplicates)
                throw Error(ErrorCode::DuplicateKey, "(" + std::to_string(*year) + "," + country +
                                                         "," + product + ") on line " +
                                                         std::to_string(line));
            it->second += *value;
        }
        years.insert(static_cast<int>(*year));
        product_codes.insert(product);
        country_codes.insert(country);
    }
    if (years.empty())
        throw Error(ErrorCode::EmptyRowOrColumn, "no export rows");

    auto products = std::make_shared<const ProductRegistry>(
        std::vector<std::string>(product_codes.begin(), product_codes.end()));
    auto countries = std::make_shared<const CountryRegistry>(
        std::vector<std::string>(country_codes.begin(), country_codes.end()));

    std::map<int, Eigen::MatrixXd> values;
    for (int year : years)
        values.emplace(year, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(products->size()),
                                                   static_cast<Eigen::Index>(countries->size())));
    for (const auto& [key, value] : cells) {
        const auto& [year, country, product] = key;
        auto i = static_cast<Eigen::Index>(*products->find(product));
        auto j = static_cast<Eigen::Index>(*countries->find(country));
        values[year](i, j) = value;
    }
    return ExportPanel(std::move(products), std::move(countries), std::move(values),
                       options.exclude_empty);
}

ExportPanel ingest_exports_file(const std::string& path, const IngestOptions& options)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    return ingest_exports(in, options);
}

void write_panel(const ExportPanel& panel, const std::string& dir)
{
    fs::create_directories(dir);
    for (int year : panel.years())
        write_grid((fs::path(dir) / ("exports_" + std::to_string(year) + ".csv")).string(),
                   panel.products()->codes(), panel.countries()->codes(), panel.values(year));
}

ExportPanel read_panel(const std::string& dir)
{
    if (!fs::is_directory(dir))
        throw Error(ErrorCode::MissingUpstream, "panel directory " + dir + " not found");
    std::map<int, Grid> grids;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("exports_", 0) != 0 || entry.path().extension() != ".csv")
            continue;
        auto year = csv::parse_int(name.substr(8, name.size() - 12));
        if (!year)
            continue;
        grids.emplace(static_cast<int>(*year), read_grid(entry.path().string()));
    }
    if (grids.empty())
        throw Error(ErrorCode::MissingUpstream, "no exports_<year>.csv files in " + dir);

    const Grid& first = grids.begin()->second;
    auto products = std::make_shared<const ProductRegistry>(first.row_codes);
    auto countries = std::make_shared<const CountryRegistry>(first.column_codes);
    if (products->codes() != first.row_codes || countries->codes() != first.column_codes)
        throw Error(ErrorCode::RegistryMismatch, "panel grid codes are not in registry order");
    std::map<int, Eigen::MatrixXd> values;
    for (auto& [year, grid] : grids) {
        if (grid.row_codes != first.row_codes || grid.column_codes != first.column_codes)
            throw Error(ErrorCode::RegistryMismatch,
                        "year " + std::to_string(year) + " registries differ from other years");
        values.emplace(year, std::move(grid.values));
    }
    return ExportPanel(std::move(products), std::move(countries), std::move(values), true);
}

std::string default_lall_group_name(int group)
{
    static const char* const names[kLallGroupCount] = {
        "Primary products (agro)",
        "Primary products (mineral)",
        "Resource based: agro",
        "Resource based: other",
        "Low tech: textiles, garments, footwear",
        "Low tech: other",
        "Medium tech: automotive",
        "Medium tech: process",
        "Medium tech: engineering",
        "High tech: electronic and electrical",
        "High tech: other",
    };
    if (group < 1 || group > kLallGroupCount)
        throw Error(ErrorCode::BadGroupId, std::to_string(group));
    return names[group - 1];
}

LallConcordance::LallConcordance(std::map<std::string, int> groups, std::map<int, std::string> names)
    : groups_(std::move(groups)), names_(std::move(names))
{
    for (const auto& [product, group] : groups_)
        if (group < 1 || group > kLallGroupCount)
            throw Error(ErrorCode::BadGroupId, product + " -> " + std::to_string(group));
    for (int g = 1; g <= kLallGroupCount; ++g)
        names_.try_emplace(g, default_lall_group_name(g));
}

std::optional<int> LallConcordance::group(const std::string& product) const
{
    auto it = groups_.find(product);
    if (it == groups_.end())
        return std::nullopt;
    return it->second;
}

const std::string& LallConcordance::group_name(int group) const
{
    auto it = names_.find(group);
    if (it == names_.end())
        throw Error(ErrorCode::BadGroupId, std::to_string(group));
    return it->second;
}

std::vector<std::string> LallConcordance::unmapped(const ProductRegistry& products) const
{
    std::vector<std::string> out;
    for (const auto& code : products.codes())
        if (!groups_.count(code))
            out.push_back(code);
    return out;
}

LallConcordance ingest_lall(std::istream& in)
{
    const csv::Table table = csv::read(in);
    const std::size_t product_col = require_column(table, "product");
    const std::size_t group_col = require_column(table, "group_id");
    const auto name_col = table.column("group_name");

    std::map<std::string, int> groups;
    std::map<int, std::string> names;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = r + 2;
        const std::string& product = field(row, product_col, line);
        auto group = csv::parse_int(field(row, group_col, line));
        if (!group || *group < 1 || *group > kLallGroupCount)
            throw Error(ErrorCode::BadGroupId,
                        "'" + field(row, group_col, line) + "' on line " + std::to_string(line));
        if (!groups.emplace(product, static_cast<int>(*group)).second)
            throw Error(ErrorCode::DuplicateKey, product + " on line " + std::to_string(line));
        if (name_col && *name_col < row.size() && !row[*name_col].empty())
            names[static_cast<int>(*group)] = row[*name_col];
    }
    return LallConcordance(std::move(groups), std::move(names));
}

LallConcordance ingest_lall_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    return ingest_lall(in);
}

}  // namespace relspace
