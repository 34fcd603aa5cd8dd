// Trapezoidal quadrature on vertical lines Re z = nu for integrals
// (1/2 pi i) \int f(z) dz with analytic, rapidly decaying integrands.
//
// The trapezoid rule on such lines converges geometrically in 1/h; the
// error report combines an analytic bound for the truncated tail (from a
// caller-supplied decreasing majorant of |f|) with a step-halving estimate
// for discretization, inflated by a safety factor.  This is the
// semi-rigorous certification used throughout: honest bounds in practice,
// not interval arithmetic.

#pragma once

#include "lfs/prec.hpp"

#include <functional>

namespace lfs {

struct QuadratureOptions {
    Real nu = Real(1);          // contour abscissa
    long steps_per_unit = 16;   // coarse grid; the fine grid halves this
    Real max_height = Real(512);
    Real safety = Real(10);
};

struct QuadratureResult {
    Complex value;
    Real error_bound;
};

// Decreasing bound for |f(nu + iy)| valid for all |y| >= height.
using TailMajorant = std::function<Real(const Real& height)>;

// Truncation control shared by the generic integrator and the AFE engine:
// smallest height Y (multiple of step) with
//   (1/2 pi) \int_{|y| > Y} |f| <= tip_budget,
// together with that integral bound.  Throws if Y would exceed max_height
// or the majorant does not decay geometrically within the probe range.
struct Truncation {
    Real height;
    Real tail_integral;  // (1/2 pi) bound over both tails
};
Truncation choose_truncation(const TailMajorant& majorant, const Real& tip_budget,
                             const Real& max_height, const Real& min_height = Real(8));

QuadratureResult integrate_vertical(const std::function<Complex(const Complex&)>& f,
                                    const TailMajorant& majorant, const Real& tol,
                                    const QuadratureOptions& opts);

// (1/2 pi i) \int_(nu) Gamma(z) y^{-z} dz = exp(-y), evaluated with the
// machinery above; the classical identity used to validate the engine.
QuadratureResult cahen_mellin_exp(const Real& y, const Real& tol, const QuadratureOptions& opts);

}  // namespace lfs
