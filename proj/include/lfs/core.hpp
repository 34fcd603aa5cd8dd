// Shared domain types: functional equation data, the 4-fold divisor bound,
// partial assignments of local data to primes, and the multiplicative
// expansion of coefficient sequences with interval bounds for the unknowns.

#pragma once

#include "lfs/local_factors.hpp"
#include "lfs/prec.hpp"

#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace lfs {

// Parameters of Lambda(s) = Q^s Gamma(s + 1/2)^2 L(s) = eps Lambda(1-s),
// with Q = sqrt(N) / (4 pi^2).  Degree 4 and the Gamma shift 1/2 are fixed.
struct FunctionalEquationParams {
    long level = 0;
    int sign = +1;
    Real q_value;

    static constexpr int degree = 4;

    FunctionalEquationParams(long n, int eps);

    bool is_bad_prime(long p) const { return level % p == 0; }
};

// 4-fold divisor function d_4(n) = #{(a,b,c,d) : abcd = n}; multiplicative
// with d_4(p^k) = C(k+3, 3).  The universal bound |b_n| <= d_4(n) at indices
// with good prime support.
long long d4(long long n);

// d_4(p^e) = C(e+3, 3), independent of p.
inline long long d4_prime_power(int e) {
    long long k = e;
    return (k + 1) * (k + 2) * (k + 3) / 6;
}

// d_4(1..M) by sieve; index 0 unused.
std::vector<long long> d4_table(long long M);

struct CoefficientValue {
    long long index = 1;
    Real analytic_value;                        // b_n, meaningful when known
    std::optional<long long> arithmetic_value;  // A_n when exactly determined
    bool known = false;
};

// A committed A_p without the rest of the local factor.
struct CommittedAp {
    long prime = 0;
    long a_p = 0;
};

using PrimeAssignment = std::variant<GoodLocalFactor, BadLocalFactor, CommittedAp>;

// Assignment of local data to an initial set of primes.  Primes dividing the
// level take bad factors only; committed A_p values must be admissible.
class PartialAssignment {
  public:
    explicit PartialAssignment(long level = 1) : level_(level) {}

    long level() const { return level_; }
    bool is_bad_prime(long p) const { return level_ % p == 0; }

    void assign(const GoodLocalFactor& f);
    void assign(const BadLocalFactor& f);
    void commit_ap(long p, long a_p);
    // Upgrade a committed A_p at a good prime to the full factor (A_p, A_{p^2}).
    void commit_ap2(long p, long a_p2);

    const std::map<long, PrimeAssignment>& assignments() const { return entries_; }
    const PrimeAssignment* find(long p) const;

  private:
    long level_;
    std::map<long, PrimeAssignment> entries_;
};

// Upper bound for |b_n| valid for every completion of the assignment:
// the product over p^e || n of |b_{p^e}| when determined, else of the
// admissible-range bound (d_4(p^e) in the generic case).
Real coefficient_bound(long long n, const PartialAssignment& pa);

// Multiplicative expansion of b_1..b_M.  Indices whose prime support is not
// fully determined are marked unknown and carry the coefficient_bound value.
struct CoefficientTable {
    long long horizon = 0;
    std::vector<char> known;          // index 1..M (0 unused)
    std::vector<Real> value;          // b_n when known, else 0
    std::vector<Real> bound;          // always: |b_n| <= bound[n] for admissible completions
    std::vector<long long> arith;     // A_n when integrally determined, else sentinel
    std::vector<char> arith_known;

    CoefficientValue at(long long n) const;
};

CoefficientTable expand_multiplicative(const PartialAssignment& pa, long long M);

// Nearest integer and the rounding residual |x - round(x)|.
std::pair<long long, Real> nearest_integer(const Real& x);

}  // namespace lfs
