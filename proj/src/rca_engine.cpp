#include "relspace/rca_engine.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "relspace/error.hpp"

namespace relspace {

namespace {

std::vector<std::string> synthetic_codes(char prefix, std::size_t count)
{
    std::vector<std::string> codes;
    codes.reserve(count);
    char buffer[32];
    for (std::size_t i = 0; i < count; ++i) {
        std::snprintf(buffer, sizeof(buffer), "%c%06zu", prefix, i);
        codes.emplace_back(buffer);
    }
    return codes;
}

}  // namespace

ProductRegistryPtr make_product_registry(std::size_t m)
{
    return std::make_shared<const ProductRegistry>(synthetic_codes('P', m));
}

CountryRegistryPtr make_country_registry(std::size_t n)
{
    return std::make_shared<const CountryRegistry>(synthetic_codes('C', n));
}

BinaryRcaMatrix::BinaryRcaMatrix(Eigen::MatrixXd x, int year, ProductRegistryPtr products,
                                 CountryRegistryPtr countries)
    : x_(std::move(x)), year_(year), products_(std::move(products)), countries_(std::move(countries))
{
    if (!products_ || !countries_ || static_cast<std::size_t>(x_.rows()) != products_->size() ||
        static_cast<std::size_t>(x_.cols()) != countries_->size())
        throw Error(ErrorCode::ShapeMismatch, "RCA matrix does not match its registries");
    if (((x_.array() != 0.0) && (x_.array() != 1.0)).any())
        throw Error(ErrorCode::ParseError, "binary RCA matrix has entries outside {0,1}");
    s_ = x_.rowwise().sum().cast<int>();
    s_star_ = x_.colwise().sum().transpose().cast<int>();
    r_ = s_.cast<long long>().sum();
}

BinaryRcaMatrix::BinaryRcaMatrix(Eigen::MatrixXd x, int year)
    : BinaryRcaMatrix(x, year, make_product_registry(static_cast<std::size_t>(x.rows())),
                      make_country_registry(static_cast<std::size_t>(x.cols())))
{
}

BinaryRcaMatrix BinaryRcaMatrix::restricted(const ProductRegistryPtr& products,
                                            const CountryRegistryPtr& countries) const
{
    if (same_registry(products, products_) && same_registry(countries, countries_))
        return *this;
    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (const auto& code : products->codes()) {
        auto i = products_->find(code);
        if (!i)
            throw Error(ErrorCode::RegistryMismatch, "product " + code + " not in RCA matrix");
        rows.push_back(static_cast<Eigen::Index>(*i));
    }
    for (const auto& code : countries->codes()) {
        auto j = countries_->find(code);
        if (!j)
            throw Error(ErrorCode::RegistryMismatch, "country " + code + " not in RCA matrix");
        cols.push_back(static_cast<Eigen::Index>(*j));
    }
    Eigen::MatrixXd sub = x_(rows, cols);
    return BinaryRcaMatrix(std::move(sub), year_, products, countries);
}

double rho_from_chi(double chi) { return (chi - 1.0) / (chi + 1.0); }

RcaYear compute_rca(const ExportPanel& panel, int year, double threshold)
{
    if (!(threshold > 0.0))
        throw Error(ErrorCode::BadFlag, "RCA threshold must be positive");
    const Eigen::MatrixXd& full = panel.values(year);

    ProductRegistryPtr products = panel.products();
    CountryRegistryPtr countries = panel.countries();
    Eigen::MatrixXd e;
    if (const YearExclusion* excluded = panel.exclusion(year)) {
        std::set<std::string> skip_products(excluded->products.begin(), excluded->products.end());
        std::set<std::string> skip_countries(excluded->countries.begin(),
                                             excluded->countries.end());
        std::vector<std::string> keep_products;
        std::vector<std::string> keep_countries;
        std::vector<Eigen::Index> rows;
        std::vector<Eigen::Index> cols;
        for (std::size_t i = 0; i < panel.products()->size(); ++i)
            if (!skip_products.count(panel.products()->code(i))) {
                keep_products.push_back(panel.products()->code(i));
                rows.push_back(static_cast<Eigen::Index>(i));
            }
        for (std::size_t j = 0; j < panel.countries()->size(); ++j)
            if (!skip_countries.count(panel.countries()->code(j))) {
                keep_countries.push_back(panel.countries()->code(j));
                cols.push_back(static_cast<Eigen::Index>(j));
            }
        products = std::make_shared<const ProductRegistry>(std::move(keep_products));
        countries = std::make_shared<const CountryRegistry>(std::move(keep_countries));
        e = full(rows, cols);
    } else {
        e = full;
    }

    const Eigen::VectorXd product_totals = e.rowwise().sum();
    const Eigen::RowVectorXd country_totals = e.colwise().sum();
    const double total = e.sum();
    if ((product_totals.array() <= 0.0).any() || (country_totals.array() <= 0.0).any() ||
        !(total > 0.0))
        throw Error(ErrorCode::DegenerateTotals, "zero export total in year " + std::to_string(year));

    Eigen::MatrixXd chi(e.rows(), e.cols());
    Eigen::MatrixXd rho(e.rows(), e.cols());
    Eigen::MatrixXd x(e.rows(), e.cols());
    for (Eigen::Index j = 0; j < e.cols(); ++j)
        for (Eigen::Index i = 0; i < e.rows(); ++i) {
            const double value = (e(i, j) / country_totals(j)) / (product_totals(i) / total);
            chi(i, j) = value;
            rho(i, j) = rho_from_chi(value);
            x(i, j) = value >= threshold ? 1.0 : 0.0;
        }

    BinaryRcaMatrix binary(std::move(x), year, products, countries);
    ContinuousRcaMatrix continuous{year, products, countries, std::move(chi), std::move(rho)};
    return RcaYear{std::move(binary), std::move(continuous)};
}

AntiRcaMatrix compute_anti_rca(const BinaryRcaMatrix& x)
{
    AntiRcaMatrix z;
    z.z = (1.0 - x.x().array()).matrix();
    z.u = (static_cast<int>(x.countries_count()) - x.s().array()).matrix();
    z.u_star = (static_cast<int>(x.products_count()) - x.s_star().array()).matrix();
    return z;
}

namespace {

template <typename Tag>
std::shared_ptr<const Registry<Tag>> intersect(const Registry<Tag>& a, const Registry<Tag>& b,
                                               std::vector<std::string>& dropped)
{
    std::vector<std::string> common;
    std::set_intersection(a.codes().begin(), a.codes().end(), b.codes().begin(), b.codes().end(),
                          std::back_inserter(common));
    std::set_symmetric_difference(a.codes().begin(), a.codes().end(), b.codes().begin(),
                                  b.codes().end(), std::back_inserter(dropped));
    return std::make_shared<const Registry<Tag>>(std::move(common));
}

}  // namespace

ChangeMatrix compute_changes(const BinaryRcaMatrix& x0, const BinaryRcaMatrix& x1)
{
    if (!(x0.year() < x1.year()))
        throw Error(ErrorCode::NonIncreasingYears,
                    std::to_string(x0.year()) + " -> " + std::to_string(x1.year()));
    ChangeMatrix out;
    out.from_year = x0.year();
    out.to_year = x1.year();

    if (same_registry(x0.products(), x1.products()) &&
        same_registry(x0.countries(), x1.countries())) {
        out.products = x0.products();
        out.countries = x0.countries();
        out.delta = x1.x() - x0.x();
    } else {
        out.products = intersect(*x0.products(), *x1.products(), out.excluded_products);
        out.countries = intersect(*x0.countries(), *x1.countries(), out.excluded_countries);
        if (out.products->size() == 0 || out.countries->size() == 0)
            throw Error(ErrorCode::RegistryMismatch, "RCA matrices share no products or countries");
        out.delta = x1.restricted(out.products, out.countries).x() -
                    x0.restricted(out.products, out.countries).x();
    }
    out.gains = (out.delta.array() > 0.5).count();
    out.losses = (out.delta.array() < -0.5).count();
    return out;
}

std::map<int, std::vector<YearPair>> enumerate_year_pairs(const std::vector<int>& years)
{
    std::vector<int> sorted = years;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() < 2)
        throw Error(ErrorCode::TooFewYears, "need at least two distinct years");
    std::map<int, std::vector<YearPair>> grouped;
    for (std::size_t a = 0; a < sorted.size(); ++a)
        for (std::size_t b = a + 1; b < sorted.size(); ++b) {
            YearPair pair{sorted[a], sorted[b]};
            grouped[pair.length()].push_back(pair);
        }
    for (auto& [length, pairs] : grouped)
        std::sort(pairs.begin(), pairs.end());
    return grouped;
}

std::vector<YearPair> flatten(const std::map<int, std::vector<YearPair>>& grouped)
{
    std::vector<YearPair> out;
    for (const auto& [length, pairs] : grouped)
        out.insert(out.end(), pairs.begin(), pairs.end());
    return out;
}

}  // namespace relspace
