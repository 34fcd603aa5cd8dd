// Homogeneous linear relations on the Dirichlet coefficients b_n, built from
// AFE weight vectors, plus the least-squares combination machinery that
// suppresses designated coefficient ranges before a search level.
//
// Every relation carries a certified tail: for any admissible coefficient
// sequence, |sum_{n<=M} u_n b_n + constant| <= tail.  Interval evaluation
// against a partial assignment then gives a sound pruning test.

#pragma once

#include "lfs/afe.hpp"
#include "lfs/core.hpp"

#include <string>
#include <vector>

namespace lfs {

struct LinearRelation {
    std::vector<Real> weights;  // index 1..M, slot 0 unused
    Real constant = Real(0);
    Real tail = Real(0);
    std::string provenance;

    long long horizon() const { return static_cast<long long>(weights.size()) - 1; }
};

struct Interval {
    Real center;
    Real radius;

    bool contains_zero() const {
        using boost::multiprecision::abs;
        return abs(center) <= radius;
    }
};

// Re/Im parts of w_n(g1)/g1(s) - w_n(g2)/g2(s); parts that vanish
// numerically are dropped, so 0, 1 or 2 relations come back.
std::vector<LinearRelation> build_difference_relation(const WeightVector& w1,
                                                      const WeightVector& w2);
std::vector<LinearRelation> build_difference_relation(const Complex& s, const TestFunction& g1,
                                                      const TestFunction& g2, long long M,
                                                      const FunctionalEquationParams& fe,
                                                      const AfeOptions& opts = {});

// Reality of Lambda on the critical line: Im (sign +1) or Re (sign -1) of
// sum w_n b_n / g(s) vanishes.  Throws if the part is numerically zero
// (e.g. t = 0 with a real test function).
LinearRelation build_phase_relation(const WeightVector& wv);
LinearRelation build_phase_relation(const Complex& s, const TestFunction& g,
                                    const FunctionalEquationParams& fe, long long M,
                                    const AfeOptions& opts = {});

// Least-squares combination of the basis minimizing the d4-weighted l2 mass
// on `suppress`, normalized so the largest keep-weight is 1.  The tail of
// the combination is the |lambda|-weighted sum of the basis tails.
LinearRelation optimize_relation(const std::vector<LinearRelation>& basis,
                                 const std::vector<long long>& keep,
                                 const std::vector<long long>& suppress);

// center = constant + sum over known indices; radius = tail + bound-weighted
// sum over unknown indices.  The assignment is consistent with the relation
// iff the interval contains zero.
Interval evaluate_relation(const LinearRelation& rel, const CoefficientTable& table);
Interval evaluate_relation(const LinearRelation& rel, const PartialAssignment& pa);

// d4-weighted l2 norm of the suppress-range weights; the optimizer's
// objective, exposed for diagnostics and tests.
Real suppressed_mass(const LinearRelation& rel, const std::vector<long long>& suppress);

}  // namespace lfs
