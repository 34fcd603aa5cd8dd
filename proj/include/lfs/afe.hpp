// Smoothed approximate functional equation engine.
//
// For Lambda(s) = Q^s Gamma(s + 1/2)^2 L(s), Q = sqrt(N)/(4 pi^2), and an
// entire test function g(z) = exp(alpha z + c z^2), the smoothed identity
//
//   Lambda(s) g(s) = Q^s     sum_n b_n n^{-s}   f_1(s,   n)
//                  + eps Q^{1-s} sum_n b_n n^{s-1} f_2(1-s, n)
//
// holds with incomplete-Mellin factors
//
//   f_1(s,  n) = (1/2 pi i) int_(nu) Gamma(z + s + 1/2)^2   z^{-1} g(s+z) (Q/n)^z dz
//   f_2(1-s,n) = (1/2 pi i) int_(nu) Gamma(z + 3/2 - s)^2   z^{-1} g(s-z) (Q/n)^z dz
//
// (our L-functions are entire, so no pole terms).  The n-th weight
//   w_n = (Q/n)^s f_1(s,n) + eps (Q/n)^{1-s} f_2(1-s,n)
// multiplies b_n; weights decay roughly like exp(C sqrt(n / sqrt N)) with
// C < 0, which is fitted and certified into a dominating tail model.

#pragma once

#include "lfs/contour.hpp"
#include "lfs/core.hpp"

#include <string>
#include <vector>

namespace lfs {

struct TestFunction {
    Complex alpha;
    Real c;

    TestFunction() : alpha(Real(0)), c(0) {}
    TestFunction(Complex a, Real c2) : alpha(std::move(a)), c(std::move(c2)) {}

    // c > 0, or c = 0 and |alpha| < pi (degree 4: the growth bound pi d/4).
    bool admissible() const;

    Complex eval(const Complex& z) const;

    std::string describe() const;
};

struct AfeOptions {
    QuadratureOptions quad;
    Real weight_tol = Real("1e-45");  // absolute target per weight; clamped
                                      // from below by what the working
                                      // precision can certify
};

struct MellinValue {
    Complex value;
    Real error_bound;
};

// kind 1 returns f_1(s, n); kind 2 returns f_2(1-s, n).
MellinValue mellin_f(int kind, const Complex& s, long long n, const TestFunction& g,
                     const FunctionalEquationParams& fe, const Real& tol,
                     const QuadratureOptions& quad = {});

// |w_n| <= k_scale * exp(c_slope * sqrt(n / sqrt N)) for n beyond the fit range.
struct TailModel {
    Real c_slope;
    Real k_scale;
};

struct WeightVector {
    Complex s_point;
    TestFunction test;
    FunctionalEquationParams fe;
    std::vector<Complex> weights;  // index 1..M, slot 0 unused
    std::vector<Real> errors;      // per-weight absolute error bounds
    Real accuracy;                 // max over errors
    TailModel tail_model;
    Real safety;

    long long horizon() const { return static_cast<long long>(weights.size()) - 1; }
};

WeightVector build_weight_vector(const Complex& s, const TestFunction& g,
                                 const FunctionalEquationParams& fe, long long M,
                                 const AfeOptions& opts = {});

Complex coefficient_weight(const Complex& s, long long n, const TestFunction& g,
                           const FunctionalEquationParams& fe, const AfeOptions& opts = {});

// Certified bound on sum_{n > M} d4(n) |w_n| from the tail model: a sieved
// prefix plus a closed-form integral remainder, times the safety factor.
Real tail_bound(long long M, const WeightVector& wv);

}  // namespace lfs
