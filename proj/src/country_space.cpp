#include "relspace/country_space.hpp"

#include "relspace/error.hpp"
#include "relspace/relatedness_algebra.hpp"

namespace relspace::country_space {

namespace {

IndicatorMatrix make_indicator(IndicatorId id, const BinaryRcaMatrix& x, Eigen::MatrixXd values)
{
    return IndicatorMatrix{id, x.year(), x.products(), x.countries(), std::move(values)};
}

void require_square(const ConditionalProbMatrix& p, Eigen::Index size, const char* what)
{
    if (p.values.rows() != size || p.values.cols() != size)
        throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be n x n");
}

}  // namespace

ConditionalProbMatrix cond_prob_Cstar(const BinaryRcaMatrix& x)
{
    auto c = algebra::cond_prob_c(x.x().transpose());
    return {std::move(c.values), ProbKind::C, Side::Country, x.year(), std::move(c.zeroed_rows)};
}

ConditionalProbMatrix cond_prob_Bstar(const BinaryRcaMatrix& x, const AntiRcaMatrix& z)
{
    if (z.z.rows() != x.products_count() || z.z.cols() != x.countries_count())
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
    auto b = algebra::cond_prob_b(x.x().transpose());
    return {std::move(b.values), ProbKind::B, Side::Country, x.year(), std::move(b.zeroed_rows)};
}

ConditionalProbMatrix marginal_Kstar(const ConditionalProbMatrix& cstar,
                                     const ConditionalProbMatrix& bstar)
{
    if (cstar.values.rows() != bstar.values.rows() || cstar.values.cols() != bstar.values.cols())
        throw Error(ErrorCode::ShapeMismatch, "C* and B* differ in shape");
    return {cstar.values - bstar.values, ProbKind::K, Side::Country, cstar.year, {}};
}

StarIndicators indicators_star(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cstar,
                               const ConditionalProbMatrix& bstar)
{
    const Eigen::Index n = x.countries_count();
    if (z.z.rows() != x.products_count() || z.z.cols() != n)
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
    require_square(cstar, n, "C*");
    require_square(bstar, n, "B*");

    const Eigen::MatrixXd xt = x.x().transpose();
    const Eigen::MatrixXd cstar_min = algebra::symmetrized_min(cstar.values);
    const Eigen::MatrixXd bstar_min = algebra::symmetrized_min(bstar.values);
    auto parts = algebra::ubiquity_redistribution(xt, cstar.values, bstar.values);

    return {
        make_indicator(IndicatorId::Dstar, x, algebra::density(xt, cstar_min).transpose()),
        make_indicator(IndicatorId::DtildeStar, x,
                       algebra::density_tilde(xt, cstar_min, bstar_min).transpose()),
        make_indicator(IndicatorId::Estar, x, parts.e.transpose()),
        make_indicator(IndicatorId::E1star, x, parts.e1.transpose()),
        make_indicator(IndicatorId::E2star, x, parts.e2.transpose()),
    };
}

}  // namespace relspace::country_space
