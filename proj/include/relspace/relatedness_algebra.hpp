#pragma once

#include <Eigen/Dense>

#include <vector>

// Registry-free algebraic core shared by the product- and country-space
// modules. Every function here is written for the product side; the country
// side applies it to the transposed RCA matrix.
namespace relspace::algebra {

struct RowNormalized {
    Eigen::MatrixXd values;
    std::vector<Eigen::Index> zeroed_rows;
};

// C = S^-1 X X^T. Rows with zero ubiquity are zero.
RowNormalized cond_prob_c(const Eigen::MatrixXd& x);

// B = U^-1 Z X^T with Z = O - X. Rows with zero anti-ubiquity are zero.
RowNormalized cond_prob_b(const Eigen::MatrixXd& x);

Eigen::MatrixXd symmetrized_min(const Eigen::MatrixXd& p);

// Divides each row of numerator by the matching entry of row_denominator;
// zero denominators give zero.
Eigen::MatrixXd divide_rows(const Eigen::MatrixXd& numerator,
                            const Eigen::VectorXd& row_denominator);

// D = Cmin X / Cmin O.
Eigen::MatrixXd density(const Eigen::MatrixXd& x, const Eigen::MatrixXd& cmin);

// D~ = (Cmin X + Bmin Z) / (Cmin O + Bmin O).
Eigen::MatrixXd density_tilde(const Eigen::MatrixXd& x, const Eigen::MatrixXd& cmin,
                              const Eigen::MatrixXd& bmin);

struct RedistributionParts {
    Eigen::MatrixXd e;   // (C^T X + B^T Z) / m
    Eigen::MatrixXd e1;  // B^T O / m
    Eigen::MatrixXd e2;  // K^T X / m
};

RedistributionParts ubiquity_redistribution(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c,
                                            const Eigen::MatrixXd& b);

// B^T O: every column equals the column sums of B.
Eigen::MatrixXd transpose_times_ones(const Eigen::MatrixXd& b, Eigen::Index cols);

}  // namespace relspace::algebra
