#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relspace/registry.hpp"

namespace relspace {

enum class IndicatorId {
    D,
    Dtilde,
    E,
    E1,
    E2,
    Dstar,
    DtildeStar,
    Estar,
    E1star,
    E2star,
    Dtot,
    DtildeTot,
    Etot,
    E1tot,
    E2tot,
};

enum class SpaceFamily { Product, Country, Combined };

inline constexpr std::array<IndicatorId, 15> kAllIndicators = {
    IndicatorId::D,      IndicatorId::Dtilde,     IndicatorId::E,      IndicatorId::E1,
    IndicatorId::E2,     IndicatorId::Dstar,      IndicatorId::DtildeStar, IndicatorId::Estar,
    IndicatorId::E1star, IndicatorId::E2star,     IndicatorId::Dtot,   IndicatorId::DtildeTot,
    IndicatorId::Etot,   IndicatorId::E1tot,      IndicatorId::E2tot,
};

// The twelve indicators that are tested for predictive power; the E1 family is
// constant along one axis and is only reported.
inline constexpr std::array<IndicatorId, 12> kHeadlineIndicators = {
    IndicatorId::D,     IndicatorId::Dtilde,     IndicatorId::E,     IndicatorId::E2,
    IndicatorId::Dstar, IndicatorId::DtildeStar, IndicatorId::Estar, IndicatorId::E2star,
    IndicatorId::Dtot,  IndicatorId::DtildeTot,  IndicatorId::Etot,  IndicatorId::E2tot,
};

std::string_view to_string(IndicatorId id);
std::optional<IndicatorId> parse_indicator(std::string_view name);
SpaceFamily space_family(IndicatorId id);
std::string_view to_string(SpaceFamily family);

// Parses "all", "headline" or a comma list of ids. Throws BadFlag.
std::vector<IndicatorId> parse_indicator_list(std::string_view text);

enum class ProbKind { C, B, K, Cmin, Bmin };
enum class Side { Product, Country };

std::string_view to_string(ProbKind kind);

// Square matrix of (marginal) conditional probabilities, m x m on the product
// side and n x n on the country side.
struct ConditionalProbMatrix {
    Eigen::MatrixXd values;
    ProbKind kind = ProbKind::C;
    Side side = Side::Product;
    int year = 0;
    // Rows set to zero because their denominator (ubiquity, anti-ubiquity,
    // diversification) was zero.
    std::vector<Eigen::Index> zeroed_rows;
};

struct IndicatorMatrix {
    IndicatorId id = IndicatorId::D;
    int year = 0;
    ProductRegistryPtr products;
    CountryRegistryPtr countries;
    Eigen::MatrixXd values;
};

}  // namespace relspace
