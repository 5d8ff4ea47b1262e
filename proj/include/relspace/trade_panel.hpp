#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relspace/registry.hpp"

namespace relspace {

// Codes that carry no positive export value in a given year.
struct YearExclusion {
    int year = 0;
    std::vector<std::string> products;
    std::vector<std::string> countries;

    bool empty() const { return products.empty() && countries.empty(); }
};

// Per-year m x n export values over a shared product/country registry.
// Immutable once built.
class ExportPanel {
public:
    ExportPanel(ProductRegistryPtr products, CountryRegistryPtr countries,
                std::map<int, Eigen::MatrixXd> values, bool exclude_empty);

    const ProductRegistryPtr& products() const { return products_; }
    const CountryRegistryPtr& countries() const { return countries_; }
    std::vector<int> years() const;
    bool has_year(int year) const { return values_.count(year) != 0; }
    const Eigen::MatrixXd& values(int year) const;
    const std::vector<YearExclusion>& exclusions() const { return exclusions_; }
    const YearExclusion* exclusion(int year) const;

private:
    ProductRegistryPtr products_;
    CountryRegistryPtr countries_;
    std::map<int, Eigen::MatrixXd> values_;
    std::vector<YearExclusion> exclusions_;
};

struct IngestOptions {
    bool sum_duplicates = false;
    // Exclude codes with no positive value in a year instead of failing.
    bool exclude_empty = false;
};

// Long format: year, country, product, value (header names, any order).
ExportPanel ingest_exports(std::istream& in, const IngestOptions& options = {});
ExportPanel ingest_exports_file(const std::string& path, const IngestOptions& options = {});

// One exports_<year>.csv grid per year: first column product code, first row
// country codes.
void write_panel(const ExportPanel& panel, const std::string& dir);
ExportPanel read_panel(const std::string& dir);

inline constexpr int kLallGroupCount = 11;

class LallConcordance {
public:
    LallConcordance() = default;
    LallConcordance(std::map<std::string, int> groups, std::map<int, std::string> names);

    std::size_t size() const { return groups_.size(); }
    std::optional<int> group(const std::string& product) const;
    const std::string& group_name(int group) const;
    const std::map<std::string, int>& groups() const { return groups_; }

    // Panel products with no group.
    std::vector<std::string> unmapped(const ProductRegistry& products) const;

private:
    std::map<std::string, int> groups_;
    std::map<int, std::string> names_;
};

std::string default_lall_group_name(int group);

// Columns product, group_id and optionally group_name.
LallConcordance ingest_lall(std::istream& in);
LallConcordance ingest_lall_file(const std::string& path);

}  // namespace relspace
