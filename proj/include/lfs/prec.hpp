// High-precision real and complex arithmetic used throughout the library.
//
// All analytic quantities (Gamma values, Mellin integrals, equation weights)
// are computed at a single global working precision, configured in bits and
// defaulting to 300.  The precision must be set before any Real is created
// and should not be changed while values are live; set_precision_bits is
// intended for program startup and for tests.

#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <utility>

namespace lfs {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

void set_precision_bits(unsigned bits);
unsigned precision_bits();

// 2^-(working precision), the round-off unit of Real.
Real eps();

const Real& pi();

// Decimal serialization with enough digits to reproduce the value exactly
// at the current precision.  Deterministic for a fixed precision.
std::string to_decimal(const Real& x);
Real from_decimal(const std::string& s);

struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r, long i = 0) : re(r), im(i) {}

    Complex operator-() const { return {-re, -im}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& x) { re *= x; im *= x; return *this; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& x) { return a *= x; }
inline Complex operator*(const Real& x, Complex a) { return a *= x; }

Complex operator/(const Complex& a, const Complex& b);
inline Complex operator/(const Complex& a, const Real& x) { return {a.re / x, a.im / x}; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z);
Real arg(const Complex& z);

Complex exp(const Complex& z);
Complex log(const Complex& z);   // principal branch
Complex sqrt(const Complex& z);  // principal branch

// x^z for real x > 0.
Complex pow(const Real& x, const Complex& z);
Complex pow(const Complex& x, const Complex& z);

inline Complex i_times(const Complex& z) { return {-z.im, z.re}; }

}  // namespace lfs
