// Run configuration: persisted as plain key/value text so it can be parsed
// before the working precision is set; materialized into the typed search
// options afterwards.

#pragma once

#include "lfs/oracle.hpp"
#include "lfs/search.hpp"

#include <string>
#include <vector>

namespace lfs {

struct RunConfig {
    unsigned precision_bits = 300;
    long long relation_horizon = 600;  // coefficient horizon M
    long commit_horizon = 97;          // largest committed prime
    std::vector<long> square_primes{5, 7};
    double safety = 10;
    long long node_budget = 1'000'000;
    long steps_per_unit = 16;
    double nu = 1.0;
    std::string weight_tol = "1e-45";
    int global_relations = 3;
    int jobs = 1;
    std::vector<double> s_imag_grid{0, 1, 2};
    // test functions as (alpha_re, alpha_im, c) triples
    std::vector<std::array<double, 3>> test_grid{
        {0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 0.5, 0}, {0, 0.75, 0},
        {0, 0, 0.125}, {1, 0, 0.125}, {-1, 0, 0.125}, {0, 0.5, 0.125}, {0, 0.75, 0.125}};
    std::vector<EllipticCurveData> curves;  // builtin list plus config extras

    void validate() const;  // throws std::invalid_argument on bad values
};

// Defaults, with the builtin curve table loaded.
RunConfig default_config();

// Parse `key = value` lines and `curve <label> <a1..a6, 5 ints> <N> <eps>`
// lines on top of the defaults.  '#' starts a comment.
RunConfig load_config(const std::string& path);

// Applies the working precision and materializes the search options.
SearchConfig make_search_config(const RunConfig& rc);

}  // namespace lfs
