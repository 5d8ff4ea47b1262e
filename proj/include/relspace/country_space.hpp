#pragma once

#include "relspace/indicator.hpp"
#include "relspace/rca_engine.hpp"

// Country-space counterparts. Each quantity is the product-space quantity of
// X^T, transposed back into the m x n layout.
namespace relspace::country_space {

// C* = S*^-1 X^T X (n x n).
ConditionalProbMatrix cond_prob_Cstar(const BinaryRcaMatrix& x);

// B* = U*^-1 Z^T X (n x n).
ConditionalProbMatrix cond_prob_Bstar(const BinaryRcaMatrix& x, const AntiRcaMatrix& z);

ConditionalProbMatrix marginal_Kstar(const ConditionalProbMatrix& cstar,
                                     const ConditionalProbMatrix& bstar);

struct StarIndicators {
    IndicatorMatrix d_star;
    IndicatorMatrix d_tilde_star;
    IndicatorMatrix e_star;
    IndicatorMatrix e1_star;
    IndicatorMatrix e2_star;
};

StarIndicators indicators_star(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cstar,
                               const ConditionalProbMatrix& bstar);

}  // namespace relspace::country_space
