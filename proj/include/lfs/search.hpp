// Breadth-first search over local-factor assignments with relation-based
// interval pruning.
//
// The level plan commits full factors at p = 2, 3 (and at bad primes, which
// have short factor lists), then A_p for good primes up to the horizon, with
// A_{p^2} levels interleaved where p^2 still influences the first 100
// coefficients.  Before each level one relation is optimized to concentrate
// weight on the level's index and starve the not-yet-committed ones; a small
// fixed set of broad relations is applied alongside it.

#pragma once

#include "lfs/core.hpp"
#include "lfs/relations.hpp"

#include <map>
#include <string>
#include <vector>

namespace lfs {

enum class LevelKind { FullFactor, PrimeCoefficient, PrimeSquareCoefficient };

struct LevelStep {
    LevelKind kind;
    long p;

    std::string name() const;
};

// Primes in increasing order; square levels directly after their prime.
std::vector<LevelStep> make_level_plan(const FunctionalEquationParams& fe, long commit_horizon,
                                       const std::vector<long>& square_primes);

struct SearchConfig {
    long commit_horizon = 97;
    std::vector<long> square_primes{5, 7};
    long long relation_horizon = 600;
    long long node_budget = 1'000'000;
    int global_relations = 3;
    AfeOptions afe;
    std::vector<Real> s_imag_grid{Real(0), Real(1), Real(2)};
    std::vector<TestFunction> test_functions;  // empty: use the default grid

    std::vector<TestFunction> effective_test_functions() const;
};

struct Survivor {
    std::map<long, PrimeAssignment> factors;
    std::vector<long long> arith;   // A_1..A_100 where determined (slot 0 unused)
    std::vector<char> arith_known;  // false for indices beyond the commit horizon
};

enum class SearchStatus { eliminated, survivors_found, inconclusive };

struct SearchReport {
    long level = 0;
    int sign = +1;
    std::vector<long long> per_level_counts;
    std::vector<std::string> level_names;
    std::vector<Survivor> survivors;
    std::vector<std::string> relations_used;
    SearchStatus status = SearchStatus::inconclusive;
    long long nodes_examined = 0;
};

// The relation basis used by search (and by oracle validation): difference
// relations against the first test function and phase relations, across the
// s-grid.
std::vector<LinearRelation> build_default_basis(const FunctionalEquationParams& fe,
                                                const SearchConfig& cfg);

std::vector<PartialAssignment> children(const PartialAssignment& node, const LevelStep& level,
                                        const FunctionalEquationParams& fe);

bool prune_test(const PartialAssignment& node, const std::vector<LinearRelation>& rels);

SearchReport search(const FunctionalEquationParams& fe, const SearchConfig& cfg);

// The per-level relation sets assembled by search, exposed for the
// oracle-path soundness checks.
struct LevelRelations {
    std::vector<LevelStep> plan;
    std::vector<std::vector<LinearRelation>> per_level;
    std::vector<std::string> provenance;
};
LevelRelations build_level_relations(const FunctionalEquationParams& fe, const SearchConfig& cfg,
                                     const std::vector<LinearRelation>& basis);

}  // namespace lfs
