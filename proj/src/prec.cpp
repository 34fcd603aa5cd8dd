#include "lfs/prec.hpp"

#include <cmath>
#include <stdexcept>

namespace lfs {

namespace {
unsigned g_precision_bits = 300;

unsigned digits10_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

struct PrecisionInit {
    PrecisionInit() { Real::default_precision(digits10_for_bits(g_precision_bits)); }
};
PrecisionInit g_precision_init;
}  // namespace

void set_precision_bits(unsigned bits) {
    if (bits < 128) throw std::invalid_argument("working precision must be >= 128 bits");
    g_precision_bits = bits;
    Real::default_precision(digits10_for_bits(bits));
}

unsigned precision_bits() { return g_precision_bits; }

Real eps() {
    Real e = 1;
    return ldexp(e, -static_cast<long>(g_precision_bits));
}

const Real& pi() {
    // Recomputed when the precision changes; cached otherwise.
    static thread_local Real cached = 0;
    static thread_local unsigned cached_bits = 0;
    if (cached_bits != g_precision_bits) {
        Real p = 0;
        mpfr_const_pi(p.backend().data(), MPFR_RNDN);
        cached = p;
        cached_bits = g_precision_bits;
    }
    return cached;
}

std::string to_decimal(const Real& x) {
    unsigned digits = digits10_for_bits(g_precision_bits) + 3;
    return x.str(digits, std::ios_base::scientific);
}

Real from_decimal(const std::string& s) { return Real(s); }

Complex operator/(const Complex& a, const Complex& b) {
    Real d = norm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Real abs(const Complex& z) {
    using boost::multiprecision::hypot;
    return hypot(z.re, z.im);
}

Real arg(const Complex& z) {
    using boost::multiprecision::atan2;
    return atan2(z.im, z.re);
}

Complex exp(const Complex& z) {
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) {
    using boost::multiprecision::log;
    return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
    using boost::multiprecision::sqrt;
    if (z.im == 0) {
        if (z.re >= 0) return {sqrt(z.re), Real(0)};
        return {Real(0), sqrt(-z.re)};
    }
    Real m = abs(z);
    Real u = sqrt((m + z.re) / 2);
    Real v = sqrt((m - z.re) / 2);
    if (z.im < 0) v = -v;
    return {u, v};
}

Complex pow(const Real& x, const Complex& z) {
    using boost::multiprecision::log;
    if (x <= 0) throw std::domain_error("pow(Real, Complex) requires a positive base");
    Real lx = log(x);
    return exp(Complex(z.re * lx, z.im * lx));
}

Complex pow(const Complex& x, const Complex& z) { return exp(z * log(x)); }

}  // namespace lfs
