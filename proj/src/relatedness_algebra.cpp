#include "relspace/relatedness_algebra.hpp"

namespace relspace::algebra {

namespace {

RowNormalized normalize_rows(Eigen::MatrixXd counts, const Eigen::VectorXd& denominators)
{
    RowNormalized out;
    for (Eigen::Index p = 0; p < counts.rows(); ++p) {
        if (denominators(p) > 0.0) {
            counts.row(p) /= denominators(p);
        } else {
            counts.row(p).setZero();
            out.zeroed_rows.push_back(p);
        }
    }
    out.values = std::move(counts);
    return out;
}

}  // namespace

RowNormalized cond_prob_c(const Eigen::MatrixXd& x)
{
    Eigen::MatrixXd k = x * x.transpose();
    return normalize_rows(std::move(k), x.rowwise().sum());
}

RowNormalized cond_prob_b(const Eigen::MatrixXd& x)
{
    const Eigen::MatrixXd z = (1.0 - x.array()).matrix();
    Eigen::MatrixXd counts = z * x.transpose();
    return normalize_rows(std::move(counts), z.rowwise().sum());
}

Eigen::MatrixXd symmetrized_min(const Eigen::MatrixXd& p)
{
    return p.cwiseMin(p.transpose());
}

Eigen::MatrixXd divide_rows(const Eigen::MatrixXd& numerator, const Eigen::VectorXd& row_denominator)
{
    Eigen::MatrixXd out(numerator.rows(), numerator.cols());
    for (Eigen::Index i = 0; i < numerator.rows(); ++i) {
        if (row_denominator(i) != 0.0)
            out.row(i) = numerator.row(i) / row_denominator(i);
        else
            out.row(i).setZero();
    }
    return out;
}

Eigen::MatrixXd density(const Eigen::MatrixXd& x, const Eigen::MatrixXd& cmin)
{
    return divide_rows(cmin * x, cmin.rowwise().sum());
}

Eigen::MatrixXd density_tilde(const Eigen::MatrixXd& x, const Eigen::MatrixXd& cmin,
                              const Eigen::MatrixXd& bmin)
{
    const Eigen::MatrixXd z = (1.0 - x.array()).matrix();
    Eigen::MatrixXd numerator = cmin * x;
    numerator.noalias() += bmin * z;
    const Eigen::VectorXd denominator = cmin.rowwise().sum() + bmin.rowwise().sum();
    return divide_rows(numerator, denominator);
}

Eigen::MatrixXd transpose_times_ones(const Eigen::MatrixXd& b, Eigen::Index cols)
{
    const Eigen::VectorXd column_sums = b.colwise().sum().transpose();
    return column_sums.replicate(1, cols);
}

RedistributionParts ubiquity_redistribution(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c,
                                            const Eigen::MatrixXd& b)
{
    const double m = static_cast<double>(x.rows());
    const Eigen::MatrixXd z = (1.0 - x.array()).matrix();

    RedistributionParts parts;
    parts.e.noalias() = c.transpose() * x;
    parts.e.noalias() += b.transpose() * z;
    parts.e /= m;

    parts.e1 = transpose_times_ones(b, x.cols()) / m;

    const Eigen::MatrixXd k = c - b;
    parts.e2.noalias() = k.transpose() * x;
    parts.e2 /= m;
    return parts;
}

}  // namespace relspace::algebra
