#include "relspace/combined_space.hpp"

#include "relspace/error.hpp"
#include "relspace/relatedness_algebra.hpp"

namespace relspace::combined_space {

namespace {

IndicatorMatrix make_indicator(IndicatorId id, const BinaryRcaMatrix& x, Eigen::MatrixXd values)
{
    return IndicatorMatrix{id, x.year(), x.products(), x.countries(), std::move(values)};
}

void require_shape(const ConditionalProbMatrix& p, Eigen::Index size, const char* what)
{
    if (p.values.rows() != size || p.values.cols() != size)
        throw Error(ErrorCode::ShapeMismatch, std::string(what) + " has the wrong shape");
}

// Elementwise ratio with zero where the denominator vanishes.
Eigen::MatrixXd safe_ratio(const Eigen::MatrixXd& numerator, const Eigen::MatrixXd& denominator)
{
    return (denominator.array() != 0.0)
        .select(numerator.array() / denominator.array(), 0.0)
        .matrix();
}

}  // namespace

TotIndicators indicator_Etot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                             const ConditionalProbMatrix& c, const ConditionalProbMatrix& b,
                             const ConditionalProbMatrix& k, const ConditionalProbMatrix& cstar,
                             const ConditionalProbMatrix& bstar,
                             const ConditionalProbMatrix& kstar, long long r)
{
    const Eigen::Index m = x.products_count();
    const Eigen::Index n = x.countries_count();
    if (z.z.rows() != m || z.z.cols() != n)
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
    require_shape(c, m, "C");
    require_shape(b, m, "B");
    require_shape(k, m, "K");
    require_shape(cstar, n, "C*");
    require_shape(bstar, n, "B*");
    require_shape(kstar, n, "K*");
    if (r <= 0)
        throw Error(ErrorCode::EmptyRcaMatrix, "r = 0: X has no comparative advantages");

    // B^T O and O B*: product autonomous part per row, country part per column.
    Eigen::MatrixXd autonomous = algebra::transpose_times_ones(b.values, n);
    autonomous += algebra::transpose_times_ones(bstar.values, m).transpose();
    Eigen::MatrixXd path_dependent = k.values.transpose() * x.x();
    path_dependent.noalias() += x.x() * kstar.values;

    const double scale = static_cast<double>(m + n);
    const double normalizer = scale * static_cast<double>(r);

    TotIndicators out{
        make_indicator(IndicatorId::Etot, x, (autonomous + path_dependent) / normalizer),
        make_indicator(IndicatorId::E1tot, x, autonomous / normalizer),
        make_indicator(IndicatorId::E2tot, x, path_dependent / normalizer),
        (autonomous + path_dependent) / scale,
    };
    return out;
}

IndicatorMatrix indicator_Dtot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cmin,
                               const ConditionalProbMatrix& cstarmin)
{
    const Eigen::Index m = x.products_count();
    const Eigen::Index n = x.countries_count();
    if (z.z.rows() != m || z.z.cols() != n)
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
    require_shape(cmin, m, "Cmin");
    require_shape(cstarmin, n, "C*min");

    Eigen::MatrixXd numerator = cmin.values * x.x();
    numerator.noalias() += x.x() * cstarmin.values;
    const Eigen::VectorXd product_part = cmin.values.rowwise().sum();
    const Eigen::RowVectorXd country_part = cstarmin.values.colwise().sum();
    Eigen::MatrixXd denominator =
        product_part.replicate(1, n) + country_part.replicate(m, 1);
    return make_indicator(IndicatorId::Dtot, x, safe_ratio(numerator, denominator));
}

IndicatorMatrix indicator_DtildeTot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                                    const ConditionalProbMatrix& cmin,
                                    const ConditionalProbMatrix& bmin,
                                    const ConditionalProbMatrix& cstarmin,
                                    const ConditionalProbMatrix& bstarmin)
{
    const Eigen::Index m = x.products_count();
    const Eigen::Index n = x.countries_count();
    if (z.z.rows() != m || z.z.cols() != n)
        throw Error(ErrorCode::ShapeMismatch, "anti-RCA matrix does not match X");
    require_shape(cmin, m, "Cmin");
    require_shape(bmin, m, "Bmin");
    require_shape(cstarmin, n, "C*min");
    require_shape(bstarmin, n, "B*min");

    Eigen::MatrixXd numerator = cmin.values * x.x();
    numerator.noalias() += bmin.values * z.z;
    numerator.noalias() += x.x() * cstarmin.values;
    numerator.noalias() += z.z * bstarmin.values;
    const Eigen::VectorXd product_part =
        cmin.values.rowwise().sum() + bmin.values.rowwise().sum();
    const Eigen::RowVectorXd country_part =
        cstarmin.values.colwise().sum() + bstarmin.values.colwise().sum();
    Eigen::MatrixXd denominator =
        product_part.replicate(1, n) + country_part.replicate(m, 1);
    return make_indicator(IndicatorId::DtildeTot, x, safe_ratio(numerator, denominator));
}

}  // namespace relspace::combined_space
