#include "lfs/search.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lfs {

std::string LevelStep::name() const {
    std::ostringstream os;
    switch (kind) {
        case LevelKind::FullFactor: os << "F" << p; break;
        case LevelKind::PrimeCoefficient: os << "A" << p; break;
        case LevelKind::PrimeSquareCoefficient: os << "A" << p << "^2"; break;
    }
    return os.str();
}

namespace {

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (prime) out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<LevelStep> make_level_plan(const FunctionalEquationParams& fe, long commit_horizon,
                                       const std::vector<long>& square_primes) {
    std::vector<LevelStep> plan;
    for (long p : primes_up_to(commit_horizon)) {
        if (fe.is_bad_prime(p) || p <= 3) {
            plan.push_back({LevelKind::FullFactor, p});
            continue;
        }
        plan.push_back({LevelKind::PrimeCoefficient, p});
        if (std::find(square_primes.begin(), square_primes.end(), p) != square_primes.end())
            plan.push_back({LevelKind::PrimeSquareCoefficient, p});
    }
    return plan;
}

std::vector<TestFunction> SearchConfig::effective_test_functions() const {
    if (!test_functions.empty()) return test_functions;
    std::vector<TestFunction> out;
    const std::vector<Complex> alphas{Complex(Real(0)), Complex(Real(1)), Complex(Real(-1)),
                                      Complex(Real(0), Real(1) / 2), Complex(Real(0), Real(3) / 4)};
    const std::vector<Real> cs{Real(0), Real(1) / 8};
    for (const Real& c : cs)
        for (const Complex& a : alphas) {
            TestFunction g(a, c);
            if (g.admissible()) out.push_back(g);
        }
    return out;
}

std::vector<LinearRelation> build_default_basis(const FunctionalEquationParams& fe,
                                                const SearchConfig& cfg) {
    const long long M = cfg.relation_horizon;
    auto gs = cfg.effective_test_functions();
    if (gs.empty()) throw std::invalid_argument("no admissible test functions configured");

    std::vector<LinearRelation> basis;
    for (const Real& t : cfg.s_imag_grid) {
        Complex s{Real(1) / 2, t};
        std::vector<WeightVector> wvs;
        wvs.reserve(gs.size());
        for (const auto& g : gs) wvs.push_back(build_weight_vector(s, g, fe, M, cfg.afe));

        for (size_t k = 1; k < wvs.size(); ++k)
            for (auto& r : build_difference_relation(wvs[0], wvs[k])) basis.push_back(std::move(r));
        for (const auto& wv : wvs) {
            try {
                basis.push_back(build_phase_relation(wv));
            } catch (const std::runtime_error&) {
                // numerically zero part (e.g. t = 0 with a real test function)
            }
        }
    }
    if (basis.empty()) throw std::runtime_error("relation basis came out empty");
    return basis;
}

std::vector<PartialAssignment> children(const PartialAssignment& node, const LevelStep& level,
                                        const FunctionalEquationParams& fe) {
    std::vector<PartialAssignment> out;
    const long p = level.p;
    switch (level.kind) {
        case LevelKind::FullFactor:
            if (fe.is_bad_prime(p)) {
                for (const auto& f : enumerate_bad(p)) {
                    PartialAssignment child = node;
                    child.assign(f);
                    out.push_back(std::move(child));
                }
            } else {
                for (const auto& f : enumerate_good(p)) {
                    PartialAssignment child = node;
                    child.assign(f);
                    out.push_back(std::move(child));
                }
            }
            break;
        case LevelKind::PrimeCoefficient:
            if (fe.is_bad_prime(p)) {
                std::set<long> aps;
                for (const auto& f : enumerate_bad(p))
                    aps.insert(f.g.empty() ? 0 : -f.g[0]);
                for (long ap : aps) {
                    PartialAssignment child = node;
                    child.commit_ap(p, ap);
                    out.push_back(std::move(child));
                }
            } else {
                for (long ap : ap_range(p)) {
                    PartialAssignment child = node;
                    child.commit_ap(p, ap);
                    out.push_back(std::move(child));
                }
            }
            break;
        case LevelKind::PrimeSquareCoefficient: {
            const PrimeAssignment* a = node.find(p);
            if (a == nullptr || !std::holds_alternative<CommittedAp>(*a))
                throw std::invalid_argument("square level before its prime level");
            long ap = std::get<CommittedAp>(*a).a_p;
            for (long ap2 : ap2_range(p, ap)) {
                PartialAssignment child = node;
                child.commit_ap2(p, ap2);
                out.push_back(std::move(child));
            }
            break;
        }
    }
    return out;
}

bool prune_test(const PartialAssignment& node, const std::vector<LinearRelation>& rels) {
    if (rels.empty()) return true;
    CoefficientTable table = expand_multiplicative(node, rels.front().horizon());
    for (const auto& r : rels) {
        Interval iv = (r.horizon() == table.horizon) ? evaluate_relation(r, table)
                                                     : evaluate_relation(r, node);
        if (!iv.contains_zero()) return false;
    }
    return true;
}

namespace {

// Exponent-level knowledge after a given number of plan steps, per prime:
// -1 unknown, 1 = A_p known, 2 = A_p and A_{p^2}, 99 = full factor.
std::map<long, int> knowledge_after(const std::vector<LevelStep>& plan, size_t upto) {
    std::map<long, int> know;
    for (size_t i = 0; i < upto && i < plan.size(); ++i) {
        const auto& st = plan[i];
        switch (st.kind) {
            case LevelKind::FullFactor: know[st.p] = 99; break;
            case LevelKind::PrimeCoefficient: know[st.p] = std::max(know[st.p], 1); break;
            case LevelKind::PrimeSquareCoefficient: know[st.p] = 99; break;
        }
    }
    return know;
}

// Indices n <= M fully determined by the knowledge map.
std::vector<char> determined_mask(long long M, const std::map<long, int>& know) {
    std::vector<char> mask(M + 1, 0);
    mask[1] = 1;
    for (long long n = 2; n <= M; ++n) {
        long long m = n;
        bool ok = true;
        for (long long p = 2; p * p <= m && ok; ++p) {
            if (m % p) continue;
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            auto it = know.find(static_cast<long>(p));
            int k = (it == know.end()) ? 0 : it->second;
            if (k < e) ok = false;
        }
        if (ok && m > 1) {
            auto it = know.find(static_cast<long>(m));
            int k = (it == know.end()) ? 0 : it->second;
            if (k < 1) ok = false;
        }
        mask[n] = ok;
    }
    return mask;
}

}  // namespace

LevelRelations build_level_relations(const FunctionalEquationParams& fe, const SearchConfig& cfg,
                                     const std::vector<LinearRelation>& basis) {
    LevelRelations out;
    out.plan = make_level_plan(fe, cfg.commit_horizon, cfg.square_primes);
    const long long M = cfg.relation_horizon;

    // Fixed broad-spectrum relations: the smallest tails in the basis.
    std::vector<size_t> order(basis.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return basis[a].tail < basis[b].tail; });
    std::vector<LinearRelation> globals;
    for (size_t i = 0; i < order.size() && i < static_cast<size_t>(cfg.global_relations); ++i)
        globals.push_back(basis[order[i]]);

    for (size_t lvl = 0; lvl < out.plan.size(); ++lvl) {
        const auto& step = out.plan[lvl];
        long long keep_index = step.kind == LevelKind::PrimeSquareCoefficient
                                   ? static_cast<long long>(step.p) * step.p
                                   : step.p;
        auto know = knowledge_after(out.plan, lvl + 1);
        auto mask = determined_mask(M, know);
        std::vector<long long> suppress;
        for (long long n = 2; n <= M; ++n)
            if (!mask[n] && n != keep_index) suppress.push_back(n);

        std::vector<LinearRelation> rels;
        rels.push_back(optimize_relation(basis, {keep_index}, suppress));
        for (const auto& g : globals) rels.push_back(g);
        out.provenance.push_back(step.name() + ":" + rels.front().provenance);
        out.per_level.push_back(std::move(rels));
    }
    return out;
}

SearchReport search(const FunctionalEquationParams& fe, const SearchConfig& cfg) {
    SearchReport report;
    report.level = fe.level;
    report.sign = fe.sign;

    std::vector<LinearRelation> basis = build_default_basis(fe, cfg);
    LevelRelations lr = build_level_relations(fe, cfg, basis);
    for (const auto& p : lr.provenance) report.relations_used.push_back(p);

    std::vector<PartialAssignment> frontier{PartialAssignment(fe.level)};
    report.nodes_examined = 0;

    for (size_t lvl = 0; lvl < lr.plan.size(); ++lvl) {
        const auto& step = lr.plan[lvl];
        report.level_names.push_back(step.name());
        std::vector<PartialAssignment> next;
        for (const auto& node : frontier) {
            for (auto& child : children(node, step, fe)) {
                ++report.nodes_examined;
                if (report.nodes_examined > cfg.node_budget) {
                    report.status = SearchStatus::inconclusive;
                    report.per_level_counts.push_back(static_cast<long long>(next.size()));
                    return report;
                }
                if (prune_test(child, lr.per_level[lvl])) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
        report.per_level_counts.push_back(static_cast<long long>(frontier.size()));
        if (frontier.empty()) {
            report.status = SearchStatus::eliminated;
            return report;
        }
    }

    report.status = SearchStatus::survivors_found;
    for (const auto& node : frontier) {
        Survivor s;
        s.factors = node.assignments();
        CoefficientTable t = expand_multiplicative(node, 100);
        s.arith.assign(101, 0);
        s.arith_known.assign(101, 0);
        for (long long n = 1; n <= 100; ++n) {
            s.arith_known[n] = t.arith_known[n];
            if (t.arith_known[n]) s.arith[n] = t.arith[n];
        }
        report.survivors.push_back(std::move(s));
    }
    return report;
}

}  // namespace lfs
