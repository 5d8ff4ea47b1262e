#pragma once

#include "relspace/indicator.hpp"
#include "relspace/rca_engine.hpp"

namespace relspace::combined_space {

struct TotIndicators {
    IndicatorMatrix e_tot;
    IndicatorMatrix e1_tot;
    IndicatorMatrix e2_tot;
    // (B^T O + K^T X + O B* + X K*)/(m+n), before division by r.
    Eigen::MatrixXd e_tot_unnormalized;
};

// Throws EmptyRcaMatrix when r = 0.
TotIndicators indicator_Etot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                             const ConditionalProbMatrix& c, const ConditionalProbMatrix& b,
                             const ConditionalProbMatrix& k, const ConditionalProbMatrix& cstar,
                             const ConditionalProbMatrix& bstar,
                             const ConditionalProbMatrix& kstar, long long r);

// (Cmin X + X C*min) / (Cmin O + O C*min).
IndicatorMatrix indicator_Dtot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                               const ConditionalProbMatrix& cmin,
                               const ConditionalProbMatrix& cstarmin);

// (Cmin X + Bmin Z + X C*min + Z B*min) / (Cmin O + Bmin O + O C*min + O B*min).
IndicatorMatrix indicator_DtildeTot(const BinaryRcaMatrix& x, const AntiRcaMatrix& z,
                                    const ConditionalProbMatrix& cmin,
                                    const ConditionalProbMatrix& bmin,
                                    const ConditionalProbMatrix& cstarmin,
                                    const ConditionalProbMatrix& bstarmin);

}  // namespace relspace::combined_space
