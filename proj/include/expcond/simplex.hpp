#pragma once

#include "expcond/linalg.hpp"

namespace expcond {

// Exact feasibility of { lambda >= 0 : sum_j lambda_j col_j = b }.
// Phase-1 simplex with Bland's rule over rationals.
bool nonneg_combination_exists(const RatMat& cols, const RatVec& b);

// Membership of p in the convex hull of the given points.
bool in_convex_hull(const RatMat& points, const RatVec& p);

}  // namespace expcond
