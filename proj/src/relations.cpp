#include "lfs/relations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lfs {

namespace {

using boost::multiprecision::abs;

// Relation tail for one scaled weight vector: model tail past M plus the
// d4-weighted per-weight error slack inside 1..M.
Real scaled_tail(const WeightVector& wv, const Real& inv_gs_abs) {
    Real t = tail_bound(wv.horizon(), wv) * inv_gs_abs;
    auto d4v = d4_table(wv.horizon());
    Real slack = 0;
    for (long long n = 1; n <= wv.horizon(); ++n) slack += Real(d4v[n]) * wv.errors[n];
    return t + slack * inv_gs_abs;
}

void check_accuracy(const WeightVector& wv) {
    Real biggest = 0;
    for (long long n = 1; n <= wv.horizon(); ++n) {
        Real m = abs(wv.weights[n]);
        if (m > biggest) biggest = m;
    }
    if (wv.accuracy > biggest / 1000)
        throw std::runtime_error("weight accuracy too poor relative to the largest weight");
}

}  // namespace

std::vector<LinearRelation> build_difference_relation(const WeightVector& w1,
                                                      const WeightVector& w2) {
    if (w1.horizon() != w2.horizon())
        throw std::invalid_argument("difference relation: mismatched horizons");
    if (w1.fe.level != w2.fe.level || w1.fe.sign != w2.fe.sign)
        throw std::invalid_argument("difference relation: mismatched functional equations");
    check_accuracy(w1);
    check_accuracy(w2);

    const long long M = w1.horizon();
    Complex g1s = w1.test.eval(w1.s_point);
    Complex g2s = w2.test.eval(w2.s_point);
    Real inv1 = 1 / abs(g1s), inv2 = 1 / abs(g2s);

    std::vector<Complex> v(M + 1);
    Real max_re = 0, max_im = 0;
    for (long long n = 1; n <= M; ++n) {
        v[n] = w1.weights[n] / g1s - w2.weights[n] / g2s;
        Real ar = abs(v[n].re), ai = abs(v[n].im);
        if (ar > max_re) max_re = ar;
        if (ai > max_im) max_im = ai;
    }
    Real tail = scaled_tail(w1, inv1) + scaled_tail(w2, inv2);
    Real zero_gate = 100 * (w1.accuracy * inv1 + w2.accuracy * inv2);

    std::ostringstream prov;
    prov << "diff{s=" << w1.s_point.re.convert_to<double>() << "+"
         << w1.s_point.im.convert_to<double>() << "i," << w1.test.describe() << "-"
         << w2.test.describe() << "}";

    std::vector<LinearRelation> out;
    for (int part = 0; part < 2; ++part) {
        Real biggest = part == 0 ? max_re : max_im;
        if (biggest <= zero_gate) continue;  // numerically zero part
        LinearRelation r;
        r.weights.assign(M + 1, Real(0));
        for (long long n = 1; n <= M; ++n) r.weights[n] = part == 0 ? v[n].re : v[n].im;
        r.constant = 0;
        r.tail = tail;
        r.provenance = prov.str() + (part == 0 ? ".re" : ".im");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<LinearRelation> build_difference_relation(const Complex& s, const TestFunction& g1,
                                                      const TestFunction& g2, long long M,
                                                      const FunctionalEquationParams& fe,
                                                      const AfeOptions& opts) {
    WeightVector w1 = build_weight_vector(s, g1, fe, M, opts);
    WeightVector w2 = build_weight_vector(s, g2, fe, M, opts);
    return build_difference_relation(w1, w2);
}

LinearRelation build_phase_relation(const WeightVector& wv) {
    check_accuracy(wv);
    const long long M = wv.horizon();
    Complex gs = wv.test.eval(wv.s_point);
    Real invg = 1 / abs(gs);

    // sign +1: Lambda real on the critical line, so Im part vanishes;
    // sign -1: Lambda purely imaginary, so Re part vanishes.
    const bool take_im = wv.fe.sign == +1;

    LinearRelation r;
    r.weights.assign(M + 1, Real(0));
    Real biggest = 0;
    for (long long n = 1; n <= M; ++n) {
        Complex q = wv.weights[n] / gs;
        r.weights[n] = take_im ? q.im : q.re;
        Real m = abs(r.weights[n]);
        if (m > biggest) biggest = m;
    }
    Real zero_gate = 100 * wv.accuracy * invg;
    if (biggest <= zero_gate)
        throw std::runtime_error("phase relation is numerically zero for this (s, g)");
    r.constant = 0;
    r.tail = scaled_tail(wv, invg);
    std::ostringstream prov;
    prov << "phase{s=" << wv.s_point.re.convert_to<double>() << "+"
         << wv.s_point.im.convert_to<double>() << "i," << wv.test.describe() << "}"
         << (take_im ? ".im" : ".re");
    r.provenance = prov.str();
    return r;
}

LinearRelation build_phase_relation(const Complex& s, const TestFunction& g,
                                    const FunctionalEquationParams& fe, long long M,
                                    const AfeOptions& opts) {
    return build_phase_relation(build_weight_vector(s, g, fe, M, opts));
}

namespace {

// Gaussian elimination with partial pivoting; G is n x n row-major.
std::vector<double> solve_dense(std::vector<double> G, std::vector<double> rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(G[r * n + col]) > std::fabs(G[piv * n + col])) piv = r;
        if (G[piv * n + col] == 0) throw std::runtime_error("singular system");
        if (piv != col) {
            for (size_t k = 0; k < n; ++k) std::swap(G[piv * n + k], G[col * n + k]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (size_t r = col + 1; r < n; ++r) {
            double f = G[r * n + col] / G[col * n + col];
            if (f == 0) continue;
            for (size_t k = col; k < n; ++k) G[r * n + k] -= f * G[col * n + k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (size_t r = n; r-- > 0;) {
        double acc = rhs[r];
        for (size_t k = r + 1; k < n; ++k) acc -= G[r * n + k] * x[k];
        x[r] = acc / G[r * n + r];
    }
    return x;
}

}  // namespace

Real suppressed_mass(const LinearRelation& rel, const std::vector<long long>& suppress) {
    Real mass = 0;
    for (long long n : suppress) {
        if (n < 1 || n > rel.horizon()) continue;
        Real term = Real(d4(n)) * rel.weights[n];
        mass += term * term;
    }
    using boost::multiprecision::sqrt;
    return sqrt(mass);
}

LinearRelation optimize_relation(const std::vector<LinearRelation>& basis,
                                 const std::vector<long long>& keep,
                                 const std::vector<long long>& suppress) {
    if (basis.empty()) throw std::invalid_argument("optimize_relation: empty basis");
    const long long M = basis.front().horizon();
    for (const auto& r : basis)
        if (r.horizon() != M) throw std::invalid_argument("optimize_relation: mismatched horizons");
    for (long long n : keep)
        for (long long m : suppress)
            if (n == m) throw std::invalid_argument("optimize_relation: keep and suppress overlap");

    auto rescale_to_keep = [&](LinearRelation r) {
        Real biggest = 0;
        for (long long n : keep) {
            if (n < 1 || n > M) continue;
            Real m = abs(r.weights[n]);
            if (m > biggest) biggest = m;
        }
        if (biggest == 0)
            throw std::runtime_error("optimize_relation: all keep-range weights vanish");
        for (auto& w : r.weights) w /= biggest;
        r.constant /= biggest;
        r.tail /= biggest;
        return r;
    };

    // Degenerate suppress set: the basis element with the smallest tail.
    if (suppress.empty()) {
        size_t best = 0;
        for (size_t i = 1; i < basis.size(); ++i)
            if (basis[i].tail < basis[best].tail) best = i;
        return rescale_to_keep(basis[best]);
    }
    if (basis.size() == 1) return rescale_to_keep(basis[0]);

    // Pre-normalize each basis relation to unit max-weight for conditioning.
    const size_t B = basis.size();
    std::vector<Real> scale(B, Real(1));
    for (size_t i = 0; i < B; ++i) {
        Real biggest = 0;
        for (long long n = 1; n <= M; ++n) {
            Real m = abs(basis[i].weights[n]);
            if (m > biggest) biggest = m;
        }
        if (biggest == 0) biggest = 1;
        scale[i] = 1 / biggest;
    }

    // Gram matrix of the d4-weighted suppress-range inner products plus a
    // tail ridge, in double (the combination stays sound for any lambda; the
    // solve only steers suppression quality).
    std::vector<long long> sset;
    for (long long n : suppress)
        if (1 <= n && n <= M) sset.push_back(n);
    std::vector<double> d4w(sset.size());
    for (size_t j = 0; j < sset.size(); ++j) d4w[j] = static_cast<double>(d4(sset[j]));

    std::vector<std::vector<double>> rows(B, std::vector<double>(sset.size()));
    for (size_t i = 0; i < B; ++i)
        for (size_t j = 0; j < sset.size(); ++j)
            rows[i][j] = (basis[i].weights[sset[j]] * scale[i]).convert_to<double>() * d4w[j];

    std::vector<double> G(B * B, 0.0);
    double trace = 0;
    for (size_t i = 0; i < B; ++i) {
        for (size_t j = i; j < B; ++j) {
            double acc = 0;
            for (size_t k = 0; k < sset.size(); ++k) acc += rows[i][k] * rows[j][k];
            G[i * B + j] = acc;
            G[j * B + i] = acc;
        }
        double tl = (basis[i].tail * scale[i]).convert_to<double>();
        G[i * B + i] += tl * tl;
        trace += G[i * B + i];
    }
    double ridge = trace * 1e-28 + 1e-300;
    for (size_t i = 0; i < B; ++i) G[i * B + i] += ridge;

    // Constraint row: the keep index with the largest best-single weight.
    long long anchor = -1;
    {
        Real best = 0;
        for (long long n : keep) {
            if (n < 1 || n > M) continue;
            for (size_t i = 0; i < B; ++i) {
                Real m = abs(basis[i].weights[n]) * scale[i];
                if (m > best) { best = m; anchor = n; }
            }
        }
        if (anchor < 0)
            throw std::runtime_error("optimize_relation: all keep-range weights vanish");
    }
    std::vector<double> cvec(B);
    for (size_t i = 0; i < B; ++i)
        cvec[i] = (basis[i].weights[anchor] * scale[i]).convert_to<double>();

    // minimize l^T G l subject to c^T l = 1:  l = G^{-1} c / (c^T G^{-1} c)
    std::vector<double> lambda;
    try {
        std::vector<double> gc = solve_dense(G, cvec);
        double denom = 0;
        for (size_t i = 0; i < B; ++i) denom += cvec[i] * gc[i];
        if (denom == 0 || !std::isfinite(denom)) throw std::runtime_error("degenerate constraint");
        lambda.resize(B);
        for (size_t i = 0; i < B; ++i) {
            lambda[i] = gc[i] / denom;
            if (!std::isfinite(lambda[i])) throw std::runtime_error("nonfinite solution");
        }
    } catch (const std::exception&) {
        // Fall back to the best single relation.
        size_t best = 0;
        Real best_mass = suppressed_mass(basis[0], suppress);
        for (size_t i = 1; i < B; ++i) {
            Real m = suppressed_mass(basis[i], suppress);
            if (m < best_mass) { best_mass = m; best = i; }
        }
        return rescale_to_keep(basis[best]);
    }

    LinearRelation out;
    out.weights.assign(M + 1, Real(0));
    out.constant = 0;
    out.tail = 0;
    std::ostringstream prov;
    prov << "opt{anchor=" << anchor << ",basis=" << B << "}";
    out.provenance = prov.str();
    for (size_t i = 0; i < B; ++i) {
        if (lambda[i] == 0) continue;
        Real li = Real(lambda[i]) * scale[i];
        for (long long n = 1; n <= M; ++n) out.weights[n] += li * basis[i].weights[n];
        out.constant += li * basis[i].constant;
        out.tail += abs(li) * basis[i].tail;
    }
    return rescale_to_keep(std::move(out));
}

Interval evaluate_relation(const LinearRelation& rel, const CoefficientTable& table) {
    if (rel.horizon() != table.horizon)
        throw std::invalid_argument("evaluate_relation: relation and table horizons differ");
    Interval out{rel.constant, rel.tail};
    for (long long n = 1; n <= rel.horizon(); ++n) {
        if (table.known[n])
            out.center += rel.weights[n] * table.value[n];
        else
            out.radius += abs(rel.weights[n]) * table.bound[n];
    }
    return out;
}

Interval evaluate_relation(const LinearRelation& rel, const PartialAssignment& pa) {
    return evaluate_relation(rel, expand_multiplicative(pa, rel.horizon()));
}

}  // namespace lfs
