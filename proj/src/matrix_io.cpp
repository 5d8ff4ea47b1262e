#include "relspace/matrix_io.hpp"

#include <filesystem>
#include <fstream>

#include "relspace/csv.hpp"
#include "relspace/error.hpp"

namespace relspace {

void write_grid(const std::string& path, const std::vector<std::string>& row_codes,
                const std::vector<std::string>& column_codes, const Eigen::MatrixXd& values)
{
    if (values.rows() != static_cast<Eigen::Index>(row_codes.size()) ||
        values.cols() != static_cast<Eigen::Index>(column_codes.size()))
        throw Error(ErrorCode::ShapeMismatch, "grid codes do not match matrix for " + path);
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path);
    out << "product";
    for (const auto& code : column_codes)
        out << ',' << csv::escape(code);
    out << '\n';
    std::string line;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        line = csv::escape(row_codes[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            line.push_back(',');
            line += csv::format_double(values(i, j));
        }
        line.push_back('\n');
        out << line;
    }
    if (!out)
        throw Error(ErrorCode::Io, "write failed for " + path);
}

Grid read_grid(const std::string& path)
{
    if (!std::filesystem::exists(path))
        throw Error(ErrorCode::MissingUpstream, path + " not found");
    csv::Table table = csv::read_file(path);
    if (table.header.empty())
        throw Error(ErrorCode::MissingColumn, "grid " + path + " has no header");
    Grid grid;
    grid.column_codes.assign(table.header.begin() + 1, table.header.end());
    const auto n = static_cast<Eigen::Index>(grid.column_codes.size());
    grid.values.resize(static_cast<Eigen::Index>(table.rows.size()), n);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        auto& row = table.rows[r];
        if (static_cast<Eigen::Index>(row.size()) != n + 1)
            throw Error(ErrorCode::ParseError,
                        path + " line " + std::to_string(r + 2) + " has the wrong field count");
        grid.row_codes.push_back(row[0]);
        for (Eigen::Index j = 0; j < n; ++j) {
            auto value = csv::parse_double(row[static_cast<std::size_t>(j) + 1]);
            if (!value)
                throw Error(ErrorCode::ParseError, path + " line " + std::to_string(r + 2) +
                                                       ": '" + row[static_cast<std::size_t>(j) + 1] +
                                                       "' is not a number");
            grid.values(static_cast<Eigen::Index>(r), j) = *value;
        }
    }
    return grid;
}

namespace {

template <typename Tag>
std::shared_ptr<const Registry<Tag>> registry_in_order(const std::vector<std::string>& codes,
                                                       const std::string& path)
{
    auto registry = std::make_shared<const Registry<Tag>>(codes);
    if (registry->codes() != codes)
        throw Error(ErrorCode::RegistryMismatch, path + ": codes are not in lexicographic order");
    return registry;
}

}  // namespace

void write_binary_rca(const std::string& path, const BinaryRcaMatrix& x)
{
    write_grid(path, x.products()->codes(), x.countries()->codes(), x.x());
}

BinaryRcaMatrix read_binary_rca(const std::string& path, int year)
{
    Grid grid = read_grid(path);
    auto products = registry_in_order<ProductTag>(grid.row_codes, path);
    auto countries = registry_in_order<CountryTag>(grid.column_codes, path);
    return BinaryRcaMatrix(std::move(grid.values), year, std::move(products), std::move(countries));
}

void write_continuous(const std::string& path, const ContinuousRcaMatrix& rca, bool rho)
{
    write_grid(path, rca.products->codes(), rca.countries->codes(), rho ? rca.rho : rca.chi);
}

ContinuousRcaMatrix read_continuous(const std::string& chi_path, const std::string& rho_path,
                                    int year)
{
    Grid chi = read_grid(chi_path);
    Grid rho = read_grid(rho_path);
    if (chi.row_codes != rho.row_codes || chi.column_codes != rho.column_codes)
        throw Error(ErrorCode::ShapeMismatch, chi_path + " and " + rho_path + " disagree on codes");
    ContinuousRcaMatrix out;
    out.year = year;
    out.products = registry_in_order<ProductTag>(chi.row_codes, chi_path);
    out.countries = registry_in_order<CountryTag>(chi.column_codes, chi_path);
    out.chi = std::move(chi.values);
    out.rho = std::move(rho.values);
    return out;
}

void write_changes(const std::string& path, const ChangeMatrix& delta)
{
    write_grid(path, delta.products->codes(), delta.countries->codes(), delta.delta);
}

ChangeMatrix read_changes(const std::string& path, int from_year, int to_year)
{
    Grid grid = read_grid(path);
    ChangeMatrix out;
    out.from_year = from_year;
    out.to_year = to_year;
    out.products = registry_in_order<ProductTag>(grid.row_codes, path);
    out.countries = registry_in_order<CountryTag>(grid.column_codes, path);
    if (((grid.values.array() != 0.0) && (grid.values.array() != 1.0) &&
         (grid.values.array() != -1.0))
            .any())
        throw Error(ErrorCode::ParseError, path + ": change entries must be -1, 0 or 1");
    out.delta = std::move(grid.values);
    out.gains = (out.delta.array() > 0.5).count();
    out.losses = (out.delta.array() < -0.5).count();
    return out;
}

void write_indicator(const std::string& path, const IndicatorMatrix& indicator)
{
    write_grid(path, indicator.products->codes(), indicator.countries->codes(), indicator.values);
}

IndicatorMatrix read_indicator(const std::string& path, IndicatorId id, int year)
{
    Grid grid = read_grid(path);
    IndicatorMatrix out;
    out.id = id;
    out.year = year;
    out.products = registry_in_order<ProductTag>(grid.row_codes, path);
    out.countries = registry_in_order<CountryTag>(grid.column_codes, path);
    out.values = std::move(grid.values);
    return out;
}

std::string rca_file_name(int year) { return "rca_" + std::to_string(year) + ".csv"; }
std::string chi_file_name(int year) { return "chi_" + std::to_string(year) + ".csv"; }
std::string rho_file_name(int year) { return "rho_" + std::to_string(year) + ".csv"; }

std::string delta_file_name(int from_year, int to_year)
{
    return "delta_" + std::to_string(from_year) + "_" + std::to_string(to_year) + ".csv";
}

std::string indicator_file_name(IndicatorId id, int year)
{
    return "indicator_" + std::string(to_string(id)) + "_" + std::to_string(year) + ".csv";
}

}  // namespace relspace
