#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relspace/registry.hpp"
#include "relspace/trade_panel.hpp"

namespace relspace {

// Binary specialization state X (m products x n countries) for one year.
class BinaryRcaMatrix {
public:
    BinaryRcaMatrix(Eigen::MatrixXd x, int year, ProductRegistryPtr products,
                    CountryRegistryPtr countries);
    // Synthetic registries; for matrices not derived from a panel.
    BinaryRcaMatrix(Eigen::MatrixXd x, int year = 0);

    const Eigen::MatrixXd& x() const { return x_; }
    int year() const { return year_; }
    Eigen::Index products_count() const { return x_.rows(); }
    Eigen::Index countries_count() const { return x_.cols(); }
    long long r() const { return r_; }
    // Ubiquity per product and diversification per country.
    const Eigen::VectorXi& s() const { return s_; }
    const Eigen::VectorXi& s_star() const { return s_star_; }
    const ProductRegistryPtr& products() const { return products_; }
    const CountryRegistryPtr& countries() const { return countries_; }

    BinaryRcaMatrix restricted(const ProductRegistryPtr& products,
                               const CountryRegistryPtr& countries) const;

private:
    Eigen::MatrixXd x_;
    int year_;
    ProductRegistryPtr products_;
    CountryRegistryPtr countries_;
    long long r_ = 0;
    Eigen::VectorXi s_;
    Eigen::VectorXi s_star_;
};

struct AntiRcaMatrix {
    Eigen::MatrixXd z;
    Eigen::VectorXi u;       // n - s
    Eigen::VectorXi u_star;  // m - s*
};

struct ContinuousRcaMatrix {
    int year = 0;
    ProductRegistryPtr products;
    CountryRegistryPtr countries;
    Eigen::MatrixXd chi;
    Eigen::MatrixXd rho;
};

struct ChangeMatrix {
    int from_year = 0;
    int to_year = 0;
    ProductRegistryPtr products;
    CountryRegistryPtr countries;
    Eigen::MatrixXd delta;  // entries in {-1, 0, 1}
    long long gains = 0;
    long long losses = 0;
    // Codes present in only one of the two years, dropped from delta.
    std::vector<std::string> excluded_products;
    std::vector<std::string> excluded_countries;
};

struct RcaYear {
    BinaryRcaMatrix binary;
    ContinuousRcaMatrix continuous;
};

double rho_from_chi(double chi);

RcaYear compute_rca(const ExportPanel& panel, int year, double threshold = 1.0);
AntiRcaMatrix compute_anti_rca(const BinaryRcaMatrix& x);
ChangeMatrix compute_changes(const BinaryRcaMatrix& x0, const BinaryRcaMatrix& x1);

struct YearPair {
    int from = 0;
    int to = 0;

    int length() const { return to - from; }
    auto operator<=>(const YearPair&) const = default;
};

// All from < to pairs, keyed and ordered by period length.
std::map<int, std::vector<YearPair>> enumerate_year_pairs(const std::vector<int>& years);
std::vector<YearPair> flatten(const std::map<int, std::vector<YearPair>>& grouped);

}  // namespace relspace
