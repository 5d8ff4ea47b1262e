#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "relspace/indicator.hpp"
#include "relspace/rca_engine.hpp"

namespace relspace {

// Grid layout shared by every persisted matrix: header "product,<country...>",
// then one row per product code.
struct Grid {
    std::vector<std::string> row_codes;
    std::vector<std::string> column_codes;
    Eigen::MatrixXd values;
};

void write_grid(const std::string& path, const std::vector<std::string>& row_codes,
                const std::vector<std::string>& column_codes, const Eigen::MatrixXd& values);
Grid read_grid(const std::string& path);

void write_binary_rca(const std::string& path, const BinaryRcaMatrix& x);
BinaryRcaMatrix read_binary_rca(const std::string& path, int year);

void write_continuous(const std::string& path, const ContinuousRcaMatrix& rca, bool rho);
ContinuousRcaMatrix read_continuous(const std::string& chi_path, const std::string& rho_path,
                                    int year);
void write_changes(const std::string& path, const ChangeMatrix& delta);
ChangeMatrix read_changes(const std::string& path, int from_year, int to_year);

void write_indicator(const std::string& path, const IndicatorMatrix& indicator);
IndicatorMatrix read_indicator(const std::string& path, IndicatorId id, int year);

std::string rca_file_name(int year);
std::string chi_file_name(int year);
std::string rho_file_name(int year);
std::string delta_file_name(int from_year, int to_year);
std::string indicator_file_name(IndicatorId id, int year);

}  // namespace relspace
