#pragma once

#include "relspace/indicator.hpp"
#include "relspace/rca_engine.hpp"

namespace relspace::product_space {

// c_pq = k_pq / s_p, k = X X^T.
ConditionalProbMatrix cond_prob_C(const BinaryRcaMatrix& x);

// b_pq = (Z X^T)_pq / u_p; rows with u_p = 0 are zero and listed in zeroed_rows.
ConditionalProbMatrix cond_prob_B(const BinaryRcaMatrix& x, const AntiRcaMatrix& z);

ConditionalProbMatrix marginal_K(const ConditionalProbMatrix& c, const ConditionalProbMatrix& b);

// Elementwise min(P, P^T); kind becomes Cmin or Bmin.
ConditionalProbMatrix symmetrized(const ConditionalProbMatrix& p);

IndicatorMatrix density_D(const BinaryRcaMatrix& x, const ConditionalProbMatrix& cmin);

struct EIndicators {
    IndicatorMatrix e;
    IndicatorMatrix e1;
    IndicatorMatrix e2;
};

// E from (C^T X + B^T Z)/m; E1 = B^T O/m and E2 = K^T X/m from the
// decomposition.
EIndicators indicator_E(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                        const ConditionalProbMatrix& c, const ConditionalProbMatrix& b);

IndicatorMatrix density_Dtilde(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cmin,
                               const ConditionalProbMatrix& bmin);

}  // namespace relspace::product_space
