#include "lfs/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfs {

FunctionalEquationParams::FunctionalEquationParams(long n, int eps) : level(n), sign(eps) {
    if (n < 1) throw std::invalid_argument("level must be a positive integer");
    if (eps != 1 && eps != -1) throw std::invalid_argument("sign must be +1 or -1");
    using boost::multiprecision::sqrt;
    q_value = sqrt(Real(n)) / (4 * pi() * pi());
}

long long d4(long long n) {
    if (n < 1) throw std::invalid_argument("d4: n must be >= 1");
    long long result = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long long k = 0;
        while (n % p == 0) { n /= p; ++k; }
        result *= (k + 1) * (k + 2) * (k + 3) / 6;  // C(k+3, 3)
    }
    if (n > 1) result *= 4;
    return result;
}

std::vector<long long> d4_table(long long M) {
    if (M < 1) throw std::invalid_argument("d4_table: M must be >= 1");
    // Three Dirichlet convolutions with 1 starting from the unit sequence.
    std::vector<long long> cur(M + 1, 0), next(M + 1, 0);
    std::fill(cur.begin() + 1, cur.end(), 1);
    for (int pass = 0; pass < 3; ++pass) {
        std::fill(next.begin(), next.end(), 0);
        for (long long a = 1; a <= M; ++a)
            for (long long n = a; n <= M; n += a) next[n] += cur[n / a];
        cur.swap(next);
    }
    return cur;
}

void PartialAssignment::assign(const GoodLocalFactor& f) {
    if (is_bad_prime(f.prime)) throw std::invalid_argument("good factor at a prime dividing the level");
    if (!is_tempered_good(f.prime, f.a_p, f.a_p2)) throw std::invalid_argument("factor is not tempered");
    entries_.insert_or_assign(f.prime, f);
}

void PartialAssignment::assign(const BadLocalFactor& f) {
    if (!is_bad_prime(f.prime)) throw std::invalid_argument("bad factor at a prime not dividing the level");
    entries_.insert_or_assign(f.prime, f);
}

void PartialAssignment::commit_ap(long p, long a_p) {
    if (is_bad_prime(p)) {
        entries_.insert_or_assign(p, CommittedAp{p, a_p});
        return;
    }
    const auto& range = ap_range(p);
    if (!std::binary_search(range.begin(), range.end(), a_p))
        throw std::invalid_argument("committed A_p outside the admissible range");
    entries_.insert_or_assign(p, CommittedAp{p, a_p});
}

void PartialAssignment::commit_ap2(long p, long a_p2) {
    auto it = entries_.find(p);
    if (it == entries_.end() || !std::holds_alternative<CommittedAp>(it->second))
        throw std::invalid_argument("commit_ap2 requires a previously committed A_p");
    if (is_bad_prime(p)) throw std::invalid_argument("commit_ap2 applies to good primes only");
    long a_p = std::get<CommittedAp>(it->second).a_p;
    assign(GoodLocalFactor{p, a_p, a_p2});
}

const PrimeAssignment* PartialAssignment::find(long p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? nullptr : &it->second;
}

namespace {

// |b_{p^e}| bound for one prime power given its assignment state.
Real prime_power_bound(const PartialAssignment& pa, long p, int e) {
    using boost::multiprecision::abs;
    const PrimeAssignment* a = pa.find(p);
    if (a == nullptr) return Real(d4_prime_power(e));
    if (const auto* g = std::get_if<GoodLocalFactor>(a))
        return abs(expand_local(*g, e).analytic[e]);
    if (const auto* b = std::get_if<BadLocalFactor>(a))
        return abs(expand_local(*b, e).analytic[e]);
    const auto& c = std::get<CommittedAp>(*a);
    using boost::multiprecision::sqrt;
    if (e == 1) return abs(Real(c.a_p)) / sqrt(Real(p));
    if (e == 2 && !pa.is_bad_prime(p)) return Real(max_abs_ap2(p, c.a_p)) / Real(p);
    return Real(d4_prime_power(e));
}

}  // namespace

Real coefficient_bound(long long n, const PartialAssignment& pa) {
    if (n < 1) throw std::invalid_argument("coefficient_bound: n must be >= 1");
    Real bound = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        bound *= prime_power_bound(pa, static_cast<long>(p), e);
    }
    if (n > 1) bound *= prime_power_bound(pa, static_cast<long>(n), 1);
    return bound;
}

CoefficientValue CoefficientTable::at(long long n) const {
    CoefficientValue v;
    v.index = n;
    v.known = known[n];
    if (v.known) v.analytic_value = value[n];
    if (arith_known[n]) v.arithmetic_value = arith[n];
    return v;
}

CoefficientTable expand_multiplicative(const PartialAssignment& pa, long long M) {
    if (M < 1) throw std::invalid_argument("expand_multiplicative: M must be >= 1");

    CoefficientTable t;
    t.horizon = M;
    t.known.assign(M + 1, 0);
    t.value.assign(M + 1, Real(0));
    t.bound.assign(M + 1, Real(0));
    t.arith.assign(M + 1, 0);
    t.arith_known.assign(M + 1, 0);
    t.known[1] = 1;
    t.value[1] = 1;
    t.bound[1] = 1;
    t.arith[1] = 1;
    t.arith_known[1] = 1;

    // Smallest prime factor sieve for fast factorization of 1..M.
    std::vector<long long> spf(M + 1, 0);
    for (long long i = 2; i <= M; ++i)
        if (spf[i] == 0)
            for (long long j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = i;

    // Per-prime expansions up to the largest needed power.
    struct PrimeData {
        bool full = false;     // complete local factor (good or bad)
        bool ap_only = false;  // committed A_p
        LocalExpansion exp;    // when full
        Real b_p;              // when ap_only
        long a_p = 0;
    };
    std::map<long long, PrimeData> primes;
    for (long long p = 2; p <= M; ++p) {
        if (spf[p] != p) continue;
        int kmax = 0;
        long long pk = 1;
        while (pk <= M / p) { pk *= p; ++kmax; }
        PrimeData d;
        const PrimeAssignment* a = pa.find(static_cast<long>(p));
        if (a != nullptr) {
            if (const auto* g = std::get_if<GoodLocalFactor>(a)) {
                d.full = true;
                d.exp = expand_local(*g, kmax);
            } else if (const auto* b = std::get_if<BadLocalFactor>(a)) {
                d.full = true;
                d.exp = expand_local(*b, kmax);
            } else {
                const auto& c = std::get<CommittedAp>(*a);
                d.ap_only = true;
                d.a_p = c.a_p;
                using boost::multiprecision::sqrt;
                d.b_p = Real(c.a_p) / sqrt(Real(p));
            }
        }
        primes.emplace(p, std::move(d));
    }

    for (long long n = 2; n <= M; ++n) {
        bool known = true, arith_known = true;
        Real value = 1, bound = 1;
        long long arith = 1;
        long long m = n;
        while (m > 1) {
            long long p = spf[m];
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            const PrimeData& d = primes.at(p);
            if (d.full) {
                value *= d.exp.analytic[e];
                using boost::multiprecision::abs;
                bound *= abs(d.exp.analytic[e]);
                arith *= d.exp.arith[e];
            } else if (d.ap_only && e == 1) {
                value *= d.b_p;
                using boost::multiprecision::abs;
                bound *= abs(d.b_p);
                arith *= d.a_p;
            } else {
                known = false;
                arith_known = false;
                Real pb = prime_power_bound(pa, static_cast<long>(p), e);
                bound *= pb;
            }
        }
        t.known[n] = known;
        if (known) {
            t.value[n] = value;
            t.arith[n] = arith;
            t.arith_known[n] = arith_known;
        }
        t.bound[n] = bound;
    }
    return t;
}

std::pair<long long, Real> nearest_integer(const Real& x) {
    using boost::multiprecision::abs;
    using boost::multiprecision::round;
    Real r = round(x);
    long long n = r.convert_to<long long>();
    return {n, abs(x - r)};
}

}  // namespace lfs
