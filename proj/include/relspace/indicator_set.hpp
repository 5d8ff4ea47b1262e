#pragma once

#include <map>
#include <vector>

#include "relspace/indicator.hpp"
#include "relspace/rca_engine.hpp"

namespace relspace {

// Runs the product, country and combined pipelines on one baseline X and keeps
// the requested indicators. The m x m intermediates are released on return.
std::map<IndicatorId, IndicatorMatrix> compute_indicators(const BinaryRcaMatrix& x,
                                                          const std::vector<IndicatorId>& ids);

}  // namespace relspace
