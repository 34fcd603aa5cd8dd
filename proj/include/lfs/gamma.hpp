// Gamma function of a complex argument at the working precision.
//
// Evaluation is by the Stirling asymptotic series with exact rational
// Bernoulli numbers, after shifting the argument far enough away from the
// origin that the series converges below the round-off unit.  Arguments
// with Re z < 1/2 are handled by the reflection formula.
//
// log_gamma returns *a* logarithm of Gamma: it agrees with the principal
// branch up to a multiple of 2*pi*i introduced by reflection/shifting.
// Callers that need Gamma itself (the only use in this project) are
// insensitive to the branch.

#pragma once

#include "lfs/prec.hpp"

namespace lfs {

Complex log_gamma(const Complex& z);
Complex gamma(const Complex& z);

// |Gamma(x + i y)| <= stirling_abs_gamma_bound(x, |y|) for |y| >= max(2|x|, 4).
// A crude but safe-for-purpose Stirling majorant used by the contour engine
// to bound truncated integral tails.
Real abs_gamma_upper_bound(const Real& x, const Real& y);

}  // namespace lfs
