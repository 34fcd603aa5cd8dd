#include "lfs/oracle.hpp"

#include "lfs/relations.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lfs {

long long EllipticCurveData::discriminant() const {
    long long b2 = a1 * a1 + 4 * a2;
    long long b4 = 2 * a4 + a1 * a3;
    long long b6 = a3 * a3 + 4 * a6;
    long long b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

const std::vector<EllipticCurveData>& builtin_curves() {
    static const std::vector<EllipticCurveData> curves{
        {"11a1", 0, -1, 1, -10, -20, 11, +1},
        {"14a1", 1, 0, 1, 4, -6, 14, +1},
        {"15a1", 1, 1, 1, -10, -10, 15, +1},
        {"17a1", 1, -1, 1, -1, -14, 17, +1},
        {"19a1", 0, 1, 1, -9, -15, 19, +1},
        {"21a1", 1, 0, 0, -4, -1, 21, +1},
        {"37a1", 0, 0, 1, -1, 0, 37, -1},
    };
    return curves;
}

const EllipticCurveData* find_curve(const std::vector<EllipticCurveData>& curves,
                                    const std::string& label) {
    for (const auto& c : curves)
        if (c.label == label) return &c;
    return nullptr;
}

long ec_point_count_ap(const EllipticCurveData& curve, long p) {
    if (p > 10'000) throw std::invalid_argument("ec_point_count_ap: p exceeds the brute-force regime");
    if (p < 2) throw std::invalid_argument("ec_point_count_ap: p must be prime");

    auto md = [p](long long x) { long long r = x % p; return r < 0 ? r + p : r; };
    const long long a1 = md(curve.a1), a2 = md(curve.a2), a3 = md(curve.a3), a4 = md(curve.a4),
                    a6 = md(curve.a6);

    long count = 1;  // point at infinity
    for (long long x = 0; x < p; ++x) {
        long long rhs = md(md(x * x % p * x) + md(a2 * x % p * x) + md(a4 * x + a6));
        long long lin = md(a1 * x + a3);
        for (long long y = 0; y < p; ++y)
            if (md(y * y + lin * y) == rhs) ++count;
    }
    return static_cast<long>(p + 1 - count);
}

namespace {

std::vector<long long> smallest_prime_factors(long long M) {
    std::vector<long long> spf(M + 1, 0);
    for (long long i = 2; i <= M; ++i)
        if (spf[i] == 0)
            for (long long j = i; j <= M; j += i)
                if (spf[j] == 0) spf[j] = i;
    return spf;
}

}  // namespace

std::vector<long long> ec_coefficients(const EllipticCurveData& curve, long long M) {
    if (M < 1 || M > 10'000) throw std::invalid_argument("ec_coefficients: M out of range");
    std::vector<long long> a(M + 1, 0);
    a[1] = 1;
    if (M == 1) return a;

    auto spf = smallest_prime_factors(M);
    long long disc = curve.discriminant();

    // A_{p^k} per prime: good recursion A_{p^{k+1}} = A_p A_{p^k} - p A_{p^{k-1}},
    // bad A_{p^k} = A_p^k; then a single multiplicative pass over 2..M.
    std::map<long long, std::vector<long long>> ppow;  // p -> [A_p, A_{p^2}, ...]
    for (long long p = 2; p <= M; ++p) {
        if (spf[p] != p) continue;
        long ap = ec_point_count_ap(curve, static_cast<long>(p));
        bool good = disc % p != 0;
        std::vector<long long> v;
        long long pk = 1;
        while (pk <= M / p) {
            pk *= p;
            size_t k = v.size() + 1;
            if (k == 1)
                v.push_back(ap);
            else if (good)
                v.push_back(ap * v[k - 2] - p * (k == 2 ? 1 : v[k - 3]));
            else
                v.push_back(v[k - 2] * ap);
        }
        ppow.emplace(p, std::move(v));
    }

    for (long long n = 2; n <= M; ++n) {
        long long p = spf[n];
        long long m = n;
        int k = 0;
        while (m % p == 0) { m /= p; ++k; }
        a[n] = a[m] * ppow.at(p)[k - 1];
    }
    return a;
}

const PrimeAssignment* OracleLFunction::factor_at(long p) const {
    for (const auto& f : factor_data) {
        if (const auto* g = std::get_if<GoodLocalFactor>(&f)) {
            if (g->prime == p) return &f;
        } else if (const auto* b = std::get_if<BadLocalFactor>(&f)) {
            if (b->prime == p) return &f;
        }
    }
    return nullptr;
}

PartialAssignment OracleLFunction::true_assignment(const std::vector<long>& primes) const {
    PartialAssignment pa(fe.level);
    for (long p : primes) {
        const PrimeAssignment* f = factor_at(p);
        if (f == nullptr) throw std::invalid_argument("true_assignment: prime beyond horizon");
        if (const auto* g = std::get_if<GoodLocalFactor>(f))
            pa.assign(*g);
        else
            pa.assign(std::get<BadLocalFactor>(*f));
    }
    return pa;
}

OracleLFunction product_l(const EllipticCurveData& c1, const EllipticCurveData& c2, long long M) {
    if (M < 1 || M > 10'000) throw std::invalid_argument("product_l: M out of range");

    using boost::multiprecision::sqrt;

    OracleLFunction L{FunctionalEquationParams(c1.conductor * c2.conductor,
                                               c1.root_number * c2.root_number),
                      {}, {}, {}};

    auto a1 = ec_coefficients(c1, M);
    auto a2 = ec_coefficients(c2, M);

    // b_n of the product by convolution in the analytic normalization,
    // followed by integer recovery A_n = b_n sqrt(n).
    std::vector<Real> b1(M + 1), b2(M + 1), b(M + 1, Real(0));
    for (long long n = 1; n <= M; ++n) {
        Real rn = sqrt(Real(n));
        b1[n] = Real(a1[n]) / rn;
        b2[n] = Real(a2[n]) / rn;
    }
    for (long long d = 1; d <= M; ++d) {
        if (a1[d] == 0) continue;
        for (long long e = 1; d * e <= M; ++e) b[d * e] += b1[d] * b2[e];
    }

    L.arith.assign(M + 1, 0);
    L.analytic.assign(M + 1, Real(0));
    Real residual_tol("1e-20");
    for (long long n = 1; n <= M; ++n) {
        auto [an, resid] = nearest_integer(b[n] * sqrt(Real(n)));
        if (resid > residual_tol)
            throw std::runtime_error("product_l: convolution failed integer recovery");
        L.arith[n] = an;
        L.analytic[n] = b[n];
    }

    // Per-prime local factors.
    long long disc1 = c1.discriminant(), disc2 = c2.discriminant();
    auto spf = smallest_prime_factors(M);
    for (long long pp = 2; pp <= M; ++pp) {
        if (spf[pp] != pp) continue;
        long p = static_cast<long>(pp);
        long ap1 = ec_point_count_ap(c1, p);
        long ap2 = ec_point_count_ap(c2, p);
        bool good1 = disc1 % p != 0, good2 = disc2 % p != 0;
        if (good1 && good2) {
            long Ap = ap1 + ap2;
            long Ap2 = ap1 * ap1 + ap1 * ap2 + ap2 * ap2 - 2 * p;
            if (!is_tempered_good(p, Ap, Ap2))
                throw std::runtime_error("product_l: good factor fails temperedness");
            L.factor_data.emplace_back(GoodLocalFactor{p, Ap, Ap2});
        } else {
            // w-side factor per curve: good (1 - a w + p w^2),
            // multiplicative (1 - a w), additive 1.
            auto curve_factor = [p](long ap, bool good) -> std::vector<long> {
                if (good) return {1, -ap, p};
                if (ap != 0) return {1, -ap};
                return {1};
            };
            auto f1 = curve_factor(ap1, good1);
            auto f2 = curve_factor(ap2, good2);
            std::vector<long> prod(f1.size() + f2.size() - 1, 0);
            for (size_t i = 0; i < f1.size(); ++i)
                for (size_t j = 0; j < f2.size(); ++j) prod[i + j] += f1[i] * f2[j];
            BadLocalFactor bad{p, {prod.begin() + 1, prod.end()}};
            const auto& admissible = enumerate_bad(p);
            if (std::find(admissible.begin(), admissible.end(), bad) == admissible.end())
                throw std::runtime_error("product_l: bad factor not in the admissible family");
            L.factor_data.emplace_back(std::move(bad));
        }
    }
    return L;
}

Real consistency_report(const OracleLFunction& L, const std::vector<LinearRelation>& rels) {
    using boost::multiprecision::abs;
    Real worst = 0;
    for (const auto& r : rels) {
        if (static_cast<long long>(r.weights.size()) - 1 > L.horizon())
            throw std::invalid_argument("consistency_report: oracle horizon too short");
        Real s = r.constant;
        for (size_t n = 1; n < r.weights.size(); ++n) s += r.weights[n] * L.analytic[n];
        Real ratio = abs(s) / r.tail;
        if (ratio > worst) worst = ratio;
    }
    return worst;
}

}  // namespace lfs
