#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfs/core.hpp"
#include "lfs/local_factors.hpp"
#include "lfs/poly.hpp"
#include "lfs/prec.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace lfs;
using boost::multiprecision::abs;
using boost::multiprecision::sqrt;

namespace {

// Brute-force d4 by quadruple enumeration, the independent oracle.
long long d4_brute(long long n) {
    long long count = 0;
    for (long long a = 1; a <= n; ++a) {
        if (n % a) continue;
        for (long long b = 1; b * a <= n; ++b) {
            if ((n / a) % b) continue;
            long long rest = n / (a * b);
            for (long long c = 1; c <= rest; ++c)
                if (rest % c == 0) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("d4 values and multiplicativity") {
    set_precision_bits(300);
    CHECK(d4(1) == 1);
    CHECK(d4(2) == 4);
    CHECK(d4(4) == d4_brute(4));
    CHECK(d4(4) == 10);
    for (long long n : {6, 12, 60, 64, 97, 720})
        CHECK(d4(n) == d4_brute(n));

    // multiplicative on coprime pairs
    for (auto [m, n] : std::vector<std::pair<long long, long long>>{
             {4, 9}, {8, 15}, {49, 10}, {121, 64}, {9973, 9971}, {5040, 121}})
        CHECK(d4(m * n) == d4(m) * d4(n));
}

TEST_CASE("functional equation parameters") {
    set_precision_bits(300);
    FunctionalEquationParams fe(211, +1);
    CHECK(fe.level == 211);
    CHECK(fe.sign == 1);
    Real expected = sqrt(Real(211)) / (4 * pi() * pi());
    CHECK(abs(fe.q_value - expected) == 0);
    CHECK(fe.degree == 4);
    CHECK(fe.is_bad_prime(211));
    CHECK(!fe.is_bad_prime(2));
    CHECK_THROWS(FunctionalEquationParams(0, 1));
    CHECK_THROWS(FunctionalEquationParams(10, 2));
}

TEST_CASE("temperedness: exact integer decision") {
    CHECK(is_tempered_good(2, 2, 2));
    CHECK(!is_tempered_good(2, 6, 0));
    CHECK(!is_tempered_good(2, 0, 5));
    CHECK(is_tempered_good(2, 0, 4));
    // a_p = 0 reduces to A_{p^2} in [-4, 4]
    for (long v = -8; v <= 8; ++v)
        CHECK(is_tempered_good(2, 0, v) == (v >= -4 && v <= 4));
}

TEST_CASE("good factor counts match the reference table") {
    CHECK(enumerate_good(2).size() == 35);
    CHECK(enumerate_good(3).size() == 63);
    CHECK(enumerate_good(5).size() == 129);
    CHECK(enumerate_good(7).size() == 207);
}

TEST_CASE("bad factor counts match the reference table") {
    CHECK(enumerate_bad(2).size() == 26);
    CHECK(enumerate_bad(3).size() == 32);
    CHECK(enumerate_bad(5).size() == 38);
    CHECK(enumerate_bad(7).size() == 44);
}

TEST_CASE("enumerate_good contains the two reference factors at p=2") {
    const auto& factors = enumerate_good(2);
    CHECK(std::find(factors.begin(), factors.end(), GoodLocalFactor{2, -1, 1}) != factors.end());
    CHECK(std::find(factors.begin(), factors.end(), GoodLocalFactor{2, 2, 2}) != factors.end());
    // lexicographic ordering
    CHECK(std::is_sorted(factors.begin(), factors.end()));
}

TEST_CASE("all good factor roots lie on the unit circle (independent root check)") {
    set_precision_bits(300);
    Real tol("1e-20");
    for (long p : {2L, 3L, 5L}) {
        for (const auto& f : enumerate_good(p)) {
            auto roots = poly_roots(factor_polynomial(f));
            REQUIRE(roots.size() == 4);
            for (const auto& z : roots) CHECK(abs(abs(z) - 1) < tol);
        }
    }
}

TEST_CASE("palindromic symmetry of good factors") {
    set_precision_bits(300);
    Real tol = ldexp(Real(1), -290);
    for (const auto& f : enumerate_good(3)) {
        auto c = factor_polynomial(f);
        REQUIRE(c.size() == 5);
        CHECK(abs(c[0] - c[4]) < tol);
        CHECK(abs(c[1] - c[3]) < tol * 8);
    }
}

TEST_CASE("bad factor root moduli lie in the admissible set") {
    set_precision_bits(300);
    Real tol("1e-20");
    for (long p : {2L, 3L, 5L}) {
        std::vector<Real> targets{1 / sqrt(Real(p)), Real(1), sqrt(Real(p)), Real(p)};
        for (const auto& f : enumerate_bad(p)) {
            if (f.degree() == 0) continue;
            auto roots = poly_roots(factor_polynomial(f));
            REQUIRE(static_cast<int>(roots.size()) == f.degree());
            for (const auto& z : roots) {
                Real m = abs(z);
                bool ok = false;
                for (const auto& t : targets)
                    if (abs(m - t) < tol) ok = true;
                CHECK(ok);
            }
        }
    }
}

TEST_CASE("bad factor basics") {
    const auto& factors = enumerate_bad(2);
    // degree-0 factor present
    CHECK(factors.front().degree() == 0);
    // 1 - w present: G(w) coefficients g = {-1}
    bool has_1_minus_w = false, has_1_minus_2w = false;
    for (const auto& f : factors) {
        if (f.g == std::vector<long>{-1}) has_1_minus_w = true;
        if (f.g == std::vector<long>{-2}) has_1_minus_2w = true;
    }
    CHECK(has_1_minus_w);
    CHECK(!has_1_minus_2w);
    // ordering by (degree, g...)
    CHECK(std::is_sorted(factors.begin(), factors.end(), [](const auto& x, const auto& y) {
        if (x.g.size() != y.g.size()) return x.g.size() < y.g.size();
        return x.g < y.g;
    }));
}

TEST_CASE("bad factors as products of admissible integer atoms (constructive cross-check)") {
    // Independently: filter *all* integer polynomials of degree <= 3 within
    // the coefficient box |g_k| <= C(3,k) p^{k/2} by (a) root moduli in the
    // admissible set and (b) every irreducible integer factor belonging to
    // the atom list {1 - w, 1 + w, 1 - p w^2, 1 + a w + p w^2 (a^2 < 4p)},
    // with 1 - p w^2 occurring only alone and at most one quadratic atom.
    set_precision_bits(256);
    long p = 3;
    std::set<std::vector<long>> expected;
    for (const auto& f : enumerate_bad(p)) expected.insert(f.g);

    std::set<std::vector<long>> constructed;
    // atoms as coefficient vectors (1, ...)
    std::vector<std::vector<long>> linear{{1, -1}, {1, 1}};
    std::vector<std::vector<long>> quad;
    for (long a = -3; a <= 3; ++a)
        if (a * a < 4 * p) quad.push_back({1, a, p});
    auto polymul = [](const std::vector<long>& x, const std::vector<long>& y) {
        std::vector<long> r(x.size() + y.size() - 1, 0);
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
        return r;
    };
    auto tail = [](const std::vector<long>& x) { return std::vector<long>(x.begin() + 1, x.end()); };

    constructed.insert(std::vector<long>{});
    constructed.insert(std::vector<long>{0, -p});
    for (size_t i = 0; i < 2; ++i) {
        constructed.insert(tail(linear[i]));
        for (size_t j = i; j < 2; ++j) {
            constructed.insert(tail(polymul(linear[i], linear[j])));
            for (size_t k = j; k < 2; ++k)
                constructed.insert(tail(polymul(polymul(linear[i], linear[j]), linear[k])));
        }
    }
    for (const auto& q : quad) {
        constructed.insert(tail(q));
        for (const auto& l : linear) constructed.insert(tail(polymul(q, l)));
    }
    CHECK(constructed == expected);
}

TEST_CASE("ap_range equals the projection of enumerate_good") {
    for (long p : {2L, 3L, 5L, 7L}) {
        std::set<long> proj;
        for (const auto& f : enumerate_good(p)) proj.insert(f.a_p);
        const auto& range = ap_range(p);
        CHECK(std::vector<long>(proj.begin(), proj.end()) == range);
    }
    CHECK(ap_range(5).size() == 17);
    CHECK(ap_range(7).size() == 21);
    // At p = 2 the floor(4 sqrt p) box is not attained: A_2 = ±5 admits no A_4.
    CHECK(ap_range(2).size() == 9);
    CHECK(ap2_range(2, 5).empty());
}

TEST_CASE("boundary A_p values still admit an A_{p^2}") {
    // A_5 = 8 sits on the boundary; the admissible square coefficients are
    // exactly the filter of enumerate_good(5) by first coordinate.
    auto r = ap2_range(5, 8);
    CHECK(!r.empty());
    for (long v : r) CHECK(is_tempered_good(5, 8, v));
    for (long v = -100; v <= 100; ++v)
        if (is_tempered_good(5, 8, v))
            CHECK(std::find(r.begin(), r.end(), v) != r.end());
}

TEST_CASE("expand_local: reference series at p=2") {
    set_precision_bits(300);
    Real tol = ldexp(Real(1), -280);
    Real rt2 = sqrt(Real(2));

    // (A_2, A_4) = (2, 2): series 1 + sqrt2 z + z^2 + sqrt2 z^3 + 2 z^4 + sqrt2 z^5
    auto e = expand_local(GoodLocalFactor{2, 2, 2}, 5);
    CHECK(e.arith == std::vector<long long>{1, 2, 2, 4, 8, 8});
    CHECK(abs(e.analytic[1] - rt2) < tol);
    CHECK(abs(e.analytic[2] - 1) < tol);
    CHECK(abs(e.analytic[3] - rt2) < tol);
    CHECK(abs(e.analytic[4] - 2) < tol);
    CHECK(abs(e.analytic[5] - rt2) < tol);

    // (A_2, A_4) = (-1, 1): series 1 - z/sqrt2 + z^2/2 - 3 z^3/(2 sqrt2) + z^4/4 + z^5/(4 sqrt2)
    auto e2 = expand_local(GoodLocalFactor{2, -1, 1}, 5);
    CHECK(e2.arith == std::vector<long long>{1, -1, 1, -3, 1, 1});
    CHECK(abs(e2.analytic[1] + 1 / rt2) < tol);
    CHECK(abs(e2.analytic[2] - Real(1) / 2) < tol);
    CHECK(abs(e2.analytic[3] + 3 / (2 * rt2)) < tol);
    CHECK(abs(e2.analytic[4] - Real(1) / 4) < tol);
    CHECK(abs(e2.analytic[5] - 1 / (4 * rt2)) < tol);

    // degree-0 bad factor: all higher coefficients vanish
    auto e3 = expand_local(BadLocalFactor{2, {}}, 3);
    CHECK(e3.arith == std::vector<long long>{1, 0, 0, 0});
}

TEST_CASE("expand_local Hecke consistency for good factors") {
    set_precision_bits(300);
    Real tol = ldexp(Real(1), -280);
    for (const auto& f : enumerate_good(3)) {
        auto e = expand_local(f, 2);
        CHECK(e.arith[1] == f.a_p);
        CHECK(e.arith[2] == f.a_p2);
        CHECK(abs(e.analytic[1] - Real(f.a_p) / sqrt(Real(3))) < tol);
        CHECK(abs(e.analytic[2] - Real(f.a_p2) / 3) < tol);
    }
}

TEST_CASE("partial assignment rules") {
    PartialAssignment pa(211);
    CHECK_THROWS(pa.assign(GoodLocalFactor{211, 0, 0}));       // bad prime
    CHECK_THROWS(pa.assign(BadLocalFactor{2, {-1}}));          // good prime
    CHECK_THROWS(pa.assign(GoodLocalFactor{2, 6, 0}));         // not tempered
    CHECK_THROWS(pa.commit_ap(2, 6));                          // outside range
    pa.assign(GoodLocalFactor{2, 2, 2});
    pa.commit_ap(5, 3);
    CHECK_THROWS(pa.commit_ap2(3, 0));                         // no committed A_3
    pa.commit_ap2(5, 1);
    const auto* a5 = pa.find(5);
    REQUIRE(a5 != nullptr);
    CHECK(std::holds_alternative<GoodLocalFactor>(*a5));
}

TEST_CASE("coefficient_bound: reference cases") {
    set_precision_bits(300);
    PartialAssignment empty(211);
    CHECK(coefficient_bound(1, empty) == 1);
    for (long long p : {2, 3, 5, 97})
        CHECK(coefficient_bound(p, empty) == 4);
    CHECK(coefficient_bound(4, empty) == 10);

    PartialAssignment pa(211);
    pa.assign(GoodLocalFactor{2, 2, 2});
    Real b = coefficient_bound(12, pa);
    CHECK(abs(b - 4) < ldexp(Real(1), -280));  // |b_4| * d4(3) = 1 * 4
}

TEST_CASE("expand_multiplicative: known/unknown marking and multiplicativity") {
    set_precision_bits(300);
    Real tol = ldexp(Real(1), -280);

    PartialAssignment empty(211);
    auto t0 = expand_multiplicative(empty, 20);
    CHECK(t0.known[1]);
    CHECK(t0.value[1] == 1);
    for (long long n = 2; n <= 20; ++n) CHECK(!t0.known[n]);

    PartialAssignment pa(211);
    pa.assign(GoodLocalFactor{2, 2, 2});
    auto t1 = expand_multiplicative(pa, 40);
    CHECK(t1.known[2]);
    CHECK(abs(t1.value[2] - sqrt(Real(2))) < tol);
    CHECK(t1.known[4]);
    CHECK(abs(t1.value[4] - 1) < tol);
    CHECK(!t1.known[6]);   // 3 unassigned
    CHECK(abs(t1.bound[6] - sqrt(Real(2)) * 4) < tol);

    pa.assign(GoodLocalFactor{3, -1, -2});
    auto t2 = expand_multiplicative(pa, 40);
    CHECK(t2.known[6]);
    CHECK(abs(t2.value[6] - t2.value[2] * t2.value[3]) < tol);
    CHECK(t2.known[36]);
    CHECK(abs(t2.value[36] - t2.value[4] * t2.value[9]) < tol);
    CHECK(t2.arith_known[6]);
    CHECK(t2.arith[6] == t2.arith[2] * t2.arith[3]);
}

TEST_CASE("committed A_p: partial knowledge") {
    set_precision_bits(300);
    PartialAssignment pa(209);
    pa.commit_ap(5, 3);
    auto t = expand_multiplicative(pa, 130);
    CHECK(t.known[5]);
    CHECK(!t.known[25]);
    CHECK(!t.known[125]);
    // bound at 25 uses admissible A_25 range given A_5 = 3, tighter than d4 = 10
    Real expected = Real(max_abs_ap2(5, 3)) / 5;
    CHECK(abs(t.bound[25] - expected) == 0);
    CHECK(expected < 10);
}

TEST_CASE("normalization round trip") {
    set_precision_bits(300);
    for (long long n : {2, 5, 97, 100}) {
        long long a = (n % 3 == 0) ? -7 : 11;
        Real b = Real(a) / sqrt(Real(n));
        auto [back, resid] = nearest_integer(b * sqrt(Real(n)));
        CHECK(back == a);
        CHECK(resid < ldexp(Real(1), -270));
    }
}
