// Roots of small complex polynomials at working precision, used as an
// independent numerical check on local-factor root moduli.

#pragma once

#include "lfs/prec.hpp"

#include <vector>

namespace lfs {

// All roots (with multiplicity) of c[0] + c[1] z + ... + c[d] z^d, c[d] != 0.
// Durand-Kerner iteration; multiple roots converge to ~sqrt(eps) accuracy,
// far below the 1e-20 tolerances used by callers.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

std::vector<Complex> poly_roots(const std::vector<Real>& coeffs);

}  // namespace lfs
