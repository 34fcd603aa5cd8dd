#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfs/gamma.hpp"
#include "lfs/poly.hpp"
#include "lfs/prec.hpp"

#include <vector>

using namespace lfs;
using boost::multiprecision::abs;
using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::sinh;
using boost::multiprecision::sqrt;

namespace {

Real tol_bits(int bits) { return ldexp(Real(1), -bits); }

}  // namespace

TEST_CASE("precision configuration and round trip") {
    set_precision_bits(300);
    CHECK(precision_bits() == 300);

    Real x = Real(1) / 3;
    Real y = from_decimal(to_decimal(x));
    CHECK(abs(x - y) < tol_bits(295));

    CHECK_THROWS(set_precision_bits(64));
    set_precision_bits(300);
}

TEST_CASE("complex arithmetic basics") {
    set_precision_bits(300);
    Complex a{Real(3), Real(4)};
    CHECK(abs(a) == 5);
    Complex b = a * conj(a);
    CHECK(b.re == 25);
    CHECK(b.im == 0);

    Complex q = Complex(Real(1)) / a;
    Complex one = q * a;
    CHECK(abs(one.re - 1) < tol_bits(290));
    CHECK(abs(one.im) < tol_bits(290));

    // exp(log z) = z away from the cut
    Complex z{Real(-2), Real(7)};
    Complex w = exp(log(z));
    CHECK(abs(w.re - z.re) < tol_bits(285));
    CHECK(abs(w.im - z.im) < tol_bits(285));

    Complex s = sqrt(z);
    Complex s2 = s * s;
    CHECK(abs(s2.re - z.re) < tol_bits(285));
    CHECK(abs(s2.im - z.im) < tol_bits(285));
}

TEST_CASE("gamma at real points") {
    set_precision_bits(300);
    // Gamma(1/2) = sqrt(pi), Gamma(6) = 120
    Complex g = gamma(Complex(Real(1) / 2));
    CHECK(abs(g.re - sqrt(pi())) < tol_bits(290));
    CHECK(abs(g.im) < tol_bits(290));

    Complex g6 = gamma(Complex(Real(6)));
    CHECK(abs(g6.re - 120) < tol_bits(280));
}

TEST_CASE("gamma modulus identities on vertical lines") {
    set_precision_bits(300);
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (const char* ys : {"0.73", "3.25", "19.0"}) {
        Real y(ys);
        Complex g = gamma(Complex(Real(1) / 2, y));
        Real lhs = norm(g);
        Real rhs = pi() / cosh(pi() * y);
        CHECK(abs(lhs - rhs) / rhs < tol_bits(280));
    }
    // |Gamma(1 + iy)|^2 = pi y / sinh(pi y)
    for (const char* ys : {"0.5", "7.125"}) {
        Real y(ys);
        Complex g = gamma(Complex(Real(1), y));
        Real lhs = norm(g);
        Real rhs = pi() * y / sinh(pi() * y);
        CHECK(abs(lhs - rhs) / rhs < tol_bits(280));
    }
}

TEST_CASE("gamma recurrence and reflection at complex points") {
    set_precision_bits(300);
    std::vector<Complex> pts{{Real("2.5"), Real("2.0")},
                             {Real("0.75"), Real("-11.0")},
                             {Real("17.0"), Real("0.25")},
                             {Real("1.5"), Real("40.0")}};
    for (const auto& z : pts) {
        Complex lhs = gamma(z + Complex(Real(1)));
        Complex rhs = z * gamma(z);
        CHECK(abs(lhs - rhs) / abs(rhs) < tol_bits(280));
    }
    // Reflection against the direct path: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    Complex z{Real("0.25"), Real("1.5")};
    Complex lhs = gamma(z) * gamma(Complex(Real(1)) - z);
    Complex pz{pi() * z.re, pi() * z.im};
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    Complex sin_pz{sin(pz.re) * cosh(pz.im), cos(pz.re) * sinh(pz.im)};
    Complex rhs = Complex(pi()) / sin_pz;
    CHECK(abs(lhs - rhs) / abs(rhs) < tol_bits(275));
}

TEST_CASE("abs gamma upper bound dominates") {
    set_precision_bits(300);
    for (const char* xs : {"0.5", "1.0", "2.5"}) {
        Real x(xs);
        for (const char* ys : {"4.0", "11.5", "33.0"}) {
            Real y(ys);
            Real actual = abs(gamma(Complex(x, y)));
            Real bound = abs_gamma_upper_bound(x, y);
            CHECK(actual <= bound);
            CHECK(bound < actual * 10);  // not uselessly loose at these heights
        }
    }
}

TEST_CASE("polynomial roots: exact cases and multiplicity") {
    set_precision_bits(300);
    // z^2 - 1
    auto r = poly_roots(std::vector<Real>{Real(-1), Real(0), Real(1)});
    REQUIRE(r.size() == 2);
    for (const auto& z : r) CHECK(abs(abs(z) - 1) < tol_bits(250));

    // (z - 2)^3 = z^3 - 6z^2 + 12z - 8: triple root, expect ~cbrt(eps) accuracy
    auto r3 = poly_roots(std::vector<Real>{Real(-8), Real(12), Real(-6), Real(1)});
    REQUIRE(r3.size() == 3);
    for (const auto& z : r3) CHECK(abs(z - Complex(Real(2))) < Real("1e-25"));

    // Degree 4 with roots on the unit circle: z^4 + 1
    auto r4 = poly_roots(std::vector<Real>{Real(1), Real(0), Real(0), Real(0), Real(1)});
    REQUIRE(r4.size() == 4);
    for (const auto& z : r4) CHECK(abs(abs(z) - 1) < tol_bits(250));
}
