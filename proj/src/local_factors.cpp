#include "lfs/local_factors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lfs {

namespace {

void require_prime(long p) {
    if (p < 2) throw std::invalid_argument("prime expected");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("prime expected");
    if (p > 10'000'000) throw std::invalid_argument("prime out of supported range");
}

long isqrt_floor(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

bool is_tempered_good(long p, long a_p, long a_p2) {
    // Both roots of w^2 - b w + (c - 2) in [-2, 2], where b = A_p/sqrt(p) and
    // c = (A_p^2 - A_{p^2})/p.  Scaled by p the four conditions become
    //   vertex:        A_p^2 <= 16 p
    //   discriminant:  4 A_{p^2} >= 3 A_p^2 - 8 p
    //   q(2), q(-2):   S >= 2 |A_p| sqrt(p)  with  S = A_p^2 - A_{p^2} + 2p,
    // and the last is S >= 0 together with S^2 >= 4 A_p^2 p.
    const long u = a_p, v = a_p2;
    if (u * u > 16 * p) return false;
    if (4 * v < 3 * u * u - 8 * p) return false;
    const long s = u * u - v + 2 * p;
    if (s < 0) return false;
    return s * s >= 4 * u * u * p;
}

const std::vector<GoodLocalFactor>& enumerate_good(long p) {
    static std::mutex mu;
    static std::map<long, std::vector<GoodLocalFactor>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    require_prime(p);
    std::vector<GoodLocalFactor> out;
    const long umax = isqrt_floor(16 * p);
    for (long u = -umax; u <= umax; ++u) {
        // v is confined to [ (3u^2 - 8p)/4 , u^2 + 2p ]; filter exactly.
        long vlo = (3 * u * u - 8 * p);
        vlo = (vlo >= 0) ? (vlo + 3) / 4 : -((-vlo) / 4);
        for (long v = vlo; v <= u * u + 2 * p; ++v)
            if (is_tempered_good(p, u, v)) out.push_back({p, u, v});
    }
    std::sort(out.begin(), out.end());
    return cache.emplace(p, std::move(out)).first->second;
}

const std::vector<BadLocalFactor>& enumerate_bad(long p) {
    static std::mutex mu;
    static std::map<long, std::vector<BadLocalFactor>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    require_prime(p);

    // Admissible factors over Z are generated by the families below; root
    // moduli land in {p^{-1/2}, 1} automatically (m in {0,1}), and the
    // degree-3 budget caps the combinations.
    std::vector<BadLocalFactor> out;
    auto add = [&](std::vector<long> g) { out.push_back({p, std::move(g)}); };

    add({});  // F_p = 1

    // Products of (1 - w)^a (1 + w)^b, 1 <= a + b <= 3: roots z = ±sqrt(p).
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
            if (a + b == 0) continue;
            std::vector<long> c{1};
            auto mul_linear = [&](long r) {  // multiply by (1 + r w)
                std::vector<long> d(c.size() + 1, 0);
                for (size_t i = 0; i < c.size(); ++i) {
                    d[i] += c[i];
                    d[i + 1] += r * c[i];
                }
                c = std::move(d);
            };
            for (int i = 0; i < a; ++i) mul_linear(-1);
            for (int i = 0; i < b; ++i) mul_linear(+1);
            add({c.begin() + 1, c.end()});
        }

    // 1 - p w^2: real roots ±p^{-1/2}, i.e. z = ±1.
    add({0, -p});

    // 1 + a w + p w^2 with a^2 < 4p: conjugate root pair on |z| = 1,
    // optionally times one linear (1 ± w).
    const long amax = isqrt_floor(4 * p - 1);
    for (long a = -amax; a <= amax; ++a) {
        add({a, p});
        for (long l : {-1L, 1L}) add({a + l, p + l * a, l * p});
    }

    std::sort(out.begin(), out.end(), [](const BadLocalFactor& x, const BadLocalFactor& y) {
        if (x.g.size() != y.g.size()) return x.g.size() < y.g.size();
        return x.g < y.g;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return cache.emplace(p, std::move(out)).first->second;
}

const std::vector<long>& ap_range(long p) {
    static std::mutex mu;
    static std::map<long, std::vector<long>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    const auto& good = enumerate_good(p);
    std::vector<long> vals;
    for (const auto& f : good) vals.push_back(f.a_p);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(p, std::move(vals)).first->second;
}

std::vector<long> ap2_range(long p, long a_p) {
    std::vector<long> vals;
    for (const auto& f : enumerate_good(p))
        if (f.a_p == a_p) vals.push_back(f.a_p2);
    return vals;
}

long max_abs_ap2(long p, long a_p) {
    long m = 0;
    for (const auto& f : enumerate_good(p))
        if (f.a_p == a_p) m = std::max(m, std::abs(f.a_p2));
    return m;
}

namespace {

// A_{p^k} from the integer recursion against the coefficients of G_p.
std::vector<long long> invert_series(const std::vector<long>& gcoeffs, int K) {
    std::vector<long long> a(K + 1, 0);
    a[0] = 1;
    for (int k = 1; k <= K; ++k) {
        long long s = 0;
        for (size_t j = 1; j <= gcoeffs.size() && static_cast<int>(j) <= k; ++j)
            s -= gcoeffs[j - 1] * a[k - j];
        a[k] = s;
    }
    return a;
}

LocalExpansion expansion_from(const std::vector<long>& gcoeffs, long p, int K) {
    LocalExpansion e;
    e.arith = invert_series(gcoeffs, K);
    e.analytic.reserve(K + 1);
    using boost::multiprecision::sqrt;
    Real rsqp = 1 / sqrt(Real(p));
    Real scale = 1;
    for (int k = 0; k <= K; ++k) {
        e.analytic.push_back(Real(e.arith[k]) * scale);
        scale *= rsqp;
    }
    return e;
}

}  // namespace

LocalExpansion expand_local(const GoodLocalFactor& f, int K) {
    if (K < 0) throw std::invalid_argument("expand_local: K must be >= 0");
    // G_p(w) = 1 - A_p w + (A_p^2 - A_{p^2}) w^2 - p A_p w^3 + p^2 w^4
    std::vector<long> g{-f.a_p, f.a_p * f.a_p - f.a_p2, -f.prime * f.a_p, f.prime * f.prime};
    return expansion_from(g, f.prime, K);
}

LocalExpansion expand_local(const BadLocalFactor& f, int K) {
    if (K < 0) throw std::invalid_argument("expand_local: K must be >= 0");
    return expansion_from(f.g, f.prime, K);
}

namespace {

std::vector<Real> polynomial_from(const std::vector<long>& gcoeffs, long p) {
    // F_p(z) = G_p(z / sqrt p): coefficient of z^k is g_k p^{-k/2}.
    using boost::multiprecision::sqrt;
    Real rsqp = 1 / sqrt(Real(p));
    std::vector<Real> c{Real(1)};
    Real scale = 1;
    for (long gk : gcoeffs) {
        scale *= rsqp;
        c.push_back(Real(gk) * scale);
    }
    return c;
}

}  // namespace

std::vector<Real> factor_polynomial(const GoodLocalFactor& f) {
    std::vector<long> g{-f.a_p, f.a_p * f.a_p - f.a_p2, -f.prime * f.a_p, f.prime * f.prime};
    return polynomial_from(g, f.prime);
}

std::vector<Real> factor_polynomial(const BadLocalFactor& f) {
    return polynomial_from(f.g, f.prime);
}

}  // namespace lfs
