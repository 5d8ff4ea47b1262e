#include "relspace/product_space.hpp"

#include "relspace/error.hpp"
#include "relspace/relatedness_algebra.hpp"

namespace relspace::product_space {

namespace {

IndicatorMatrix make_indicator(IndicatorId id, const BinaryRcaMatrix& x, Eigen::MatrixXd values)
{
    return IndicatorMatrix{id, x.year(), x.products(), x.countries(), std::move(values)};
}

void require_square(const ConditionalProbMatrix& p, Eigen::Index size, const char* what)
{
    if (p.values.rows() != size || p.values.cols() != size)
        throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be m x m");
}

void require_anti(const BinaryRcaMatrix& x, const AntiRcaMatrix& z)
{
    if (z.z.rows() != x.products_count() || z.z.cols() != x.countries_count())
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
}

}  // namespace

ConditionalProbMatrix cond_prob_C(const BinaryRcaMatrix& x)
{
    auto c = algebra::cond_prob_c(x.x());
    return {std::move(c.values), ProbKind::C, Side::Product, x.year(), std::move(c.zeroed_rows)};
}

ConditionalProbMatrix cond_prob_B(const BinaryRcaMatrix& x, const AntiRcaMatrix& z)
{
    require_anti(x, z);
    auto b = algebra::cond_prob_b(x.x());
    return {std::move(b.values), ProbKind::B, Side::Product, x.year(), std::move(b.zeroed_rows)};
}

ConditionalProbMatrix marginal_K(const ConditionalProbMatrix& c, const ConditionalProbMatrix& b)
{
    if (c.values.rows() != b.values.rows() || c.values.cols() != b.values.cols())
        throw Error(ErrorCode::ShapeMismatch, "C and B differ in shape");
    return {c.values - b.values, ProbKind::K, c.side, c.year, {}};
}

ConditionalProbMatrix symmetrized(const ConditionalProbMatrix& p)
{
    ProbKind kind = p.kind;
    if (p.kind == ProbKind::C)
        kind = ProbKind::Cmin;
    else if (p.kind == ProbKind::B)
        kind = ProbKind::Bmin;
    return {algebra::symmetrized_min(p.values), kind, p.side, p.year, p.zeroed_rows};
}

IndicatorMatrix density_D(const BinaryRcaMatrix& x, const ConditionalProbMatrix& cmin)
{
    require_square(cmin, x.products_count(), "Cmin");
    return make_indicator(IndicatorId::D, x, algebra::density(x.x(), cmin.values));
}

EIndicators indicator_E(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                        const ConditionalProbMatrix& c, const ConditionalProbMatrix& b)
{
    require_anti(x, z);
    require_square(c, x.products_count(), "C");
    require_square(b, x.products_count(), "B");
    auto parts = algebra::ubiquity_redistribution(x.x(), c.values, b.values);
    return {make_indicator(IndicatorId::E, x, std::move(parts.e)),
            make_indicator(IndicatorId::E1, x, std::move(parts.e1)),
            make_indicator(IndicatorId::E2, x, std::move(parts.e2))};
}

IndicatorMatrix density_Dtilde(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cmin, const ConditionalProbMatrix& bmin)
{
    require_anti(x, z);
    require_square(cmin, x.products_count(), "Cmin");
    require_square(bmin, x.products_count(), "Bmin");
    return make_indicator(IndicatorId::Dtilde, x,
                          algebra::density_tilde(x.x(), cmin.values, bmin.values));
}

}  // namespace relspace::product_space
