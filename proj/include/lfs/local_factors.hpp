// Local Euler factors of degree-4, weight-1, self-dual L-functions with
// integer arithmetic coefficients.
//
// Good primes p (p not dividing N) carry the degree-4 factor
//   F_p(z) = 1 - b_p z + (b_p^2 - b_{p^2}) z^2 - b_p z^3 + z^4,
//   b_p = A_p / sqrt(p),  b_{p^2} = A_{p^2} / p,  A_* integers,
// tempered: all four roots of F_p on |z| = 1.  Writing w = z + 1/z maps
// conjugate root pairs on the circle to w in [-2, 2], so temperedness is a
// pair of real-root conditions on the quadratic
//   w^2 - b_p w + (b_p^2 - b_{p^2} - 2),
// decided here exactly in integer arithmetic scaled by p.
//
// Bad primes (p | N) carry F_p(z) = G_p(z / sqrt(p)) with G_p in Z[w] of
// degree <= 3, G_p(0) = 1, and every root of F_p on |z| = p^{m/2} for some
// m in {0,1,2,3}.  Over Z the admissible factors form a small constructive
// family (see enumerate_bad below); moduli p^{1/2} and p are unattainable.

#pragma once

#include "lfs/prec.hpp"

#include <vector>

namespace lfs {

struct GoodLocalFactor {
    long prime = 0;
    long a_p = 0;    // A_p
    long a_p2 = 0;   // A_{p^2}

    bool operator==(const GoodLocalFactor&) const = default;
    auto operator<=>(const GoodLocalFactor&) const = default;
};

struct BadLocalFactor {
    long prime = 0;
    std::vector<long> g;  // g_1..g_d of G_p(w) = 1 + g_1 w + ... + g_d w^d

    int degree() const { return static_cast<int>(g.size()); }

    bool operator==(const BadLocalFactor&) const = default;
};

// Exact temperedness test; no floating point involved.
bool is_tempered_good(long p, long a_p, long a_p2);

// All tempered (A_p, A_{p^2}) pairs, ordered lexicographically.
// Results are cached; the returned reference stays valid.
const std::vector<GoodLocalFactor>& enumerate_good(long p);

// All admissible bad factors, ordered lexicographically by
// (degree, g_1, ..., g_d).  Cached.
const std::vector<BadLocalFactor>& enumerate_bad(long p);

// Admissible values of A_p at a good prime: the first components of
// enumerate_good(p), deduplicated.  Cached.
const std::vector<long>& ap_range(long p);

// Admissible A_{p^2} given a committed A_p at a good prime.
std::vector<long> ap2_range(long p, long a_p);

// max |A_{p^2}| over ap2_range, used for interval bounds; 0 if none.
long max_abs_ap2(long p, long a_p);

// Power series expansion of 1/F_p to order K: arith[k] = A_{p^k} (exact) and
// analytic[k] = b_{p^k} = A_{p^k} / p^{k/2} at working precision, k = 0..K.
struct LocalExpansion {
    std::vector<long long> arith;
    std::vector<Real> analytic;
};
LocalExpansion expand_local(const GoodLocalFactor& f, int K);
LocalExpansion expand_local(const BadLocalFactor& f, int K);

// Coefficients (constant first) of F_p(z) as exact values over Z[1/sqrt p]:
// returned as high-precision reals; used by tests to root-check factors.
std::vector<Real> factor_polynomial(const GoodLocalFactor& f);
std::vector<Real> factor_polynomial(const BadLocalFactor& f);

}  // namespace lfs
