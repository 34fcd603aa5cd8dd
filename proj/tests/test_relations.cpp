#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfs/oracle.hpp"
#include "lfs/relations.hpp"
#include "lfs/search.hpp"

#include <vector>

using namespace lfs;
using boost::multiprecision::abs;

namespace {

constexpr long long kM = 220;

SearchConfig slim_config() {
    SearchConfig cfg;
    cfg.commit_horizon = 13;
    cfg.relation_horizon = kM;
    cfg.s_imag_grid = {Real(1), Real(2)};
    cfg.test_functions = {TestFunction(),
                          TestFunction(Complex(Real(1)), Real(0)),
                          TestFunction(Complex(Real(-1)), Real(0)),
                          TestFunction(Complex(Real(0), Real(1) / 2), Real(0))};
    return cfg;
}

const std::vector<LinearRelation>& basis_for(long level, int sign) {
    static std::map<std::pair<long, int>, std::vector<LinearRelation>> cache;
    auto key = std::make_pair(level, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        set_precision_bits(300);
        FunctionalEquationParams fe(level, sign);
        it = cache.emplace(key, build_default_basis(fe, slim_config())).first;
    }
    return it->second;
}

const OracleLFunction& oracle209() {
    static OracleLFunction L = [] {
        set_precision_bits(300);
        const auto& curves = builtin_curves();
        return product_l(*find_curve(curves, "11a1"), *find_curve(curves, "19a1"), kM);
    }();
    return L;
}

}  // namespace

TEST_CASE("difference relations annihilate oracle coefficients") {
    set_precision_bits(300);
    const auto& L = oracle209();
    FunctionalEquationParams fe(209, +1);
    Complex s{Real(1) / 2, Real(2)};
    auto rels = build_difference_relation(s, TestFunction(), TestFunction(Complex(Real(1)), Real(0)),
                                          kM, fe);
    REQUIRE(!rels.empty());
    for (const auto& r : rels) {
        CHECK(r.constant == 0);
        Real resid = r.constant;
        Real acc = 0;
        for (long long n = 1; n <= kM; ++n) acc += r.weights[n] * L.analytic[n];
        resid += acc;
        CHECK(abs(resid) <= r.tail);
    }
}

TEST_CASE("identical test functions yield no difference relation") {
    set_precision_bits(300);
    FunctionalEquationParams fe(209, +1);
    Complex s{Real(1) / 2, Real(2)};
    WeightVector wv = build_weight_vector(s, TestFunction(), fe, kM, AfeOptions{});
    auto rels = build_difference_relation(wv, wv);
    CHECK(rels.empty());
}

TEST_CASE("phase relation: oracle residual and degenerate cases") {
    set_precision_bits(300);
    const auto& L = oracle209();
    FunctionalEquationParams fe(209, +1);

    // Re(alpha) != 0 breaks the conjugation symmetry and gives a usable
    // relation; the oracle satisfies it within the tail.
    LinearRelation r = build_phase_relation(Complex(Real(1) / 2, Real(1)),
                                            TestFunction(Complex(Real(1)), Real(0)), fe, kM);
    Real acc = 0;
    for (long long n = 1; n <= kM; ++n) acc += r.weights[n] * L.analytic[n];
    CHECK(abs(acc) <= r.tail);
    Real biggest = 0;
    for (long long n = 1; n <= kM; ++n)
        if (abs(r.weights[n]) > biggest) biggest = abs(r.weights[n]);
    CHECK(biggest > Real("1e-10"));

    // t = 0 with a real test function: all weights real, the Im part vanishes
    CHECK_THROWS(build_phase_relation(Complex(Real(1) / 2, Real(0)),
                                      TestFunction(Complex(Real(1)), Real(0)), fe, kM));

    // Purely imaginary alpha (g = 1 included): w_n / g(s) is forced real on
    // the critical line by the functional equation, so the phase part is the
    // zero relation at any t.
    CHECK_THROWS(build_phase_relation(Complex(Real(1) / 2, Real(1)), TestFunction(), fe, kM));
    FunctionalEquationParams fe211(211, +1);
    CHECK_THROWS(build_phase_relation(Complex(Real(1) / 2, Real(1)),
                                      TestFunction(Complex(Real(0), Real(1) / 2), Real(0)), fe211,
                                      kM));
}

TEST_CASE("evaluate_relation: trivial and reference prune cases") {
    set_precision_bits(300);
    const auto& basis = basis_for(211, +1);

    // empty assignment: interval contains zero for every relation
    PartialAssignment empty(211);
    for (const auto& r : basis) CHECK(evaluate_relation(r, empty).contains_zero());

    // the factor (A_2, A_4) = (2, 2) is inconsistent at N = 211: some
    // relation's interval excludes zero
    PartialAssignment pa(211);
    pa.assign(GoodLocalFactor{2, 2, 2});
    bool excluded = false;
    for (const auto& r : basis)
        if (!evaluate_relation(r, pa).contains_zero()) excluded = true;
    CHECK(excluded);

    // the factor (A_2, A_4) = (-1, 1) stays consistent at p = 2
    PartialAssignment pb(211);
    pb.assign(GoodLocalFactor{2, -1, 1});
    for (const auto& r : basis) CHECK(evaluate_relation(r, pb).contains_zero());
}

TEST_CASE("oracle-true assignments stay consistent; radius shrinks under refinement") {
    set_precision_bits(300);
    const auto& L = oracle209();
    const auto& basis = basis_for(209, +1);

    PartialAssignment pa(209);
    std::vector<Real> prev_radius;
    for (const auto& r : basis) prev_radius.push_back(evaluate_relation(r, pa).radius);
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
        const auto* f = L.factor_at(p);
        REQUIRE(f != nullptr);
        if (const auto* g = std::get_if<GoodLocalFactor>(f)) pa.assign(*g);
        else pa.assign(std::get<BadLocalFactor>(*f));
        for (size_t i = 0; i < basis.size(); ++i) {
            Interval iv = evaluate_relation(basis[i], pa);
            CHECK(iv.contains_zero());
            CHECK(iv.radius <= prev_radius[i] * (1 + ldexp(Real(1), -200)));
            prev_radius[i] = iv.radius;
        }
    }
}

TEST_CASE("evaluate_relation is linear on fully known assignments") {
    set_precision_bits(300);
    const auto& L = oracle209();
    const auto& basis = basis_for(209, +1);
    REQUIRE(basis.size() >= 2);

    // commit the true factors at all primes <= kM so every index is known
    std::vector<long> primes;
    for (long p = 2; p <= kM; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) primes.push_back(p);
    }
    PartialAssignment full = L.true_assignment(primes);

    LinearRelation combo;
    combo.weights.assign(kM + 1, Real(0));
    Real a("1.5"), b("-2.25");
    for (long long n = 1; n <= kM; ++n)
        combo.weights[n] = a * basis[0].weights[n] + b * basis[1].weights[n];
    combo.constant = a * basis[0].constant + b * basis[1].constant;
    combo.tail = abs(a) * basis[0].tail + abs(b) * basis[1].tail;

    Interval i0 = evaluate_relation(basis[0], full);
    Interval i1 = evaluate_relation(basis[1], full);
    Interval ic = evaluate_relation(combo, full);
    CHECK(abs(ic.center - (a * i0.center + b * i1.center)) < ldexp(Real(1), -240));
}

TEST_CASE("optimize_relation: single element, degenerate suppress, improvement") {
    set_precision_bits(300);
    const auto& basis = basis_for(211, +1);

    // single-element basis: a rescaled copy
    std::vector<LinearRelation> one{basis.front()};
    LinearRelation r1 = optimize_relation(one, {2}, {3, 5, 7});
    CHECK(abs(abs(r1.weights[2]) - 1) < ldexp(Real(1), -250));

    // empty suppress: smallest tail, rescaled
    LinearRelation r2 = optimize_relation(basis, {2}, {});
    Real best_tail = basis.front().tail;
    for (const auto& r : basis)
        if (r.tail < best_tail) best_tail = r.tail;

    // keep/suppress overlap rejected
    CHECK_THROWS(optimize_relation(basis, {19}, {19, 23}));

    // suppression: weighted mass on primes >= 23 drops by >= 10x against the
    // best single relation, normalized to the keep weight
    std::vector<long long> suppress;
    for (long long n = 23; n <= kM; ++n) {
        bool prime = true;
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) prime = false;
        if (prime) suppress.push_back(n);
    }
    LinearRelation opt = optimize_relation(basis, {19}, suppress);
    Real opt_mass = suppressed_mass(opt, suppress);

    Real best_single = 0;
    bool first = true;
    for (const auto& r : basis) {
        Real w19 = abs(r.weights[19]);
        if (w19 == 0) continue;
        LinearRelation scaled = r;
        for (auto& w : scaled.weights) w /= w19;
        Real m = suppressed_mass(scaled, suppress);
        if (first || m < best_single) { best_single = m; first = false; }
    }
    REQUIRE(!first);
    CHECK(opt_mass * 10 < best_single);
}

TEST_CASE("consistency_report: oracle annihilation and perturbation detection") {
    set_precision_bits(300);
    const auto& L = oracle209();
    const auto& basis = basis_for(209, +1);

    CHECK(consistency_report(L, basis) < 1);

    OracleLFunction bad = L;
    bad.analytic[2] += Real(1) / 2;
    CHECK(consistency_report(bad, basis) > 1);

    CHECK(consistency_report(L, {}) == 0);
}
