#include "lfs/poly.hpp"

#include <stdexcept>

namespace lfs {

namespace {

Complex eval_poly(const std::vector<Complex>& c, const Complex& z) {
    Complex v = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) v = v * z + c[i];
    return v;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("poly_roots: degree must be >= 1");
    if (norm(coeffs.back()) == 0) throw std::invalid_argument("poly_roots: leading coefficient is zero");

    const size_t d = coeffs.size() - 1;
    std::vector<Complex> c(coeffs);
    Complex lead = c.back();
    for (auto& x : c) x = x / lead;

    // Cauchy-style inclusion radius for all roots.
    Real radius = 0;
    for (size_t i = 0; i < d; ++i) {
        Real a = abs(c[i]);
        if (a > radius) radius = a;
    }
    radius += 1;

    // Deterministic non-symmetric starting points on a spiral.
    std::vector<Complex> z(d);
    Complex seed{Real("0.4"), Real("0.9")};
    Complex acc = seed;
    for (size_t i = 0; i < d; ++i) {
        z[i] = acc * radius;
        acc *= seed;
    }

    Real tol = ldexp(radius, -static_cast<long>(precision_bits()) + 16);
    const int max_iter = 1200;
    for (int it = 0; it < max_iter; ++it) {
        Real max_step = 0;
        for (size_t i = 0; i < d; ++i) {
            Complex num = eval_poly(c, z[i]);
            Complex den{Real(1), Real(0)};
            for (size_t j = 0; j < d; ++j)
                if (j != i) den *= z[i] - z[j];
            if (norm(den) == 0) {
                // Coincident iterates; nudge deterministically.
                z[i] += Complex(tol, tol);
                max_step = radius;
                continue;
            }
            Complex step = num / den;
            z[i] -= step;
            Real s = abs(step);
            if (s > max_step) max_step = s;
        }
        if (max_step < tol) break;
    }
    return z;
}

std::vector<Complex> poly_roots(const std::vector<Real>& coeffs) {
    std::vector<Complex> c;
    c.reserve(coeffs.size());
    for (const Real& x : coeffs) c.emplace_back(x, Real(0));
    return poly_roots(c);
}

}  // namespace lfs
