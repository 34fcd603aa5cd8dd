// Known degree-4 L-functions built as products of two elliptic-curve
// L-functions, used to validate every analytic module against ground truth.
//
// Curve coefficients are long Weierstrass data; a_p comes from brute-force
// point counting over F_p.  Conductors and root numbers are trusted inputs
// recorded with the curve, not computed.

#pragma once

#include "lfs/core.hpp"

#include <string>
#include <vector>

namespace lfs {

struct LinearRelation;

struct EllipticCurveData {
    std::string label;
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    long conductor = 0;
    int root_number = +1;

    // Nonzero for a nonsingular curve; sign and prime support are meaningful.
    long long discriminant() const;
};

// Curves shipped with the library (conductors 11..37).
const std::vector<EllipticCurveData>& builtin_curves();
const EllipticCurveData* find_curve(const std::vector<EllipticCurveData>& curves,
                                    const std::string& label);

// a_p = p + 1 - #E(F_p) by exhaustive point enumeration (p <= 10^4).
// At bad p the same count yields the multiplicative/additive datum in {-1,0,1}.
long ec_point_count_ap(const EllipticCurveData& curve, long p);

// Arithmetic coefficients A_1..A_M of L(s, E) via the degree-2 Euler
// recursion at good primes and A_{p^k} = A_p^k at bad primes.
std::vector<long long> ec_coefficients(const EllipticCurveData& curve, long long M);

struct OracleLFunction {
    FunctionalEquationParams fe;
    std::vector<long long> arith;      // A_n, index 1..M (slot 0 unused)
    std::vector<Real> analytic;        // b_n = A_n / sqrt(n)
    std::vector<PrimeAssignment> factor_data;  // one per prime <= M, ascending

    long long horizon() const { return static_cast<long long>(arith.size()) - 1; }

    // The factor at p, or nullptr if p exceeds the horizon.
    const PrimeAssignment* factor_at(long p) const;

    // Assignment holding the true local data at the given primes.
    PartialAssignment true_assignment(const std::vector<long>& primes) const;
};

// L(s,E1) L(s,E2): level N1 N2, sign eps1 eps2, coefficients by Dirichlet
// convolution in the analytic normalization with exact integer recovery.
OracleLFunction product_l(const EllipticCurveData& c1, const EllipticCurveData& c2, long long M);

// Max over relations of |sum u_n b_n + const| / tail; < 1 means every
// relation is satisfied within its certified slack.
Real consistency_report(const OracleLFunction& L, const std::vector<LinearRelation>& rels);

}  // namespace lfs
