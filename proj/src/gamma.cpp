#include "lfs/gamma.hpp"

#include <gmpxx.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lfs {

namespace {

// Exact Bernoulli numbers B_0, B_1, B_2, ... via the defining recurrence
//   sum_{j=0}^{m} C(m+1, j) B_j = 0   (m >= 1),
// computed once in rational arithmetic and extended on demand.
class BernoulliTable {
  public:
    const mpq_class& at(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        while (values_.size() <= n) extend();
        return values_[n];
    }

  private:
    void extend() {
        std::size_t m = values_.size();
        if (m == 0) {
            values_.emplace_back(1);
            return;
        }
        mpq_class acc = 0;
        mpz_class binom = 1;  // C(m+1, 0)
        for (std::size_t j = 0; j < m; ++j) {
            acc += binom * values_[j];
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom *= static_cast<unsigned long>(m + 1 - j);
            binom /= static_cast<unsigned long>(j + 1);
        }
        mpq_class b = -acc / mpq_class(static_cast<unsigned long>(m + 1));
        b.canonicalize();
        values_.push_back(b);
    }

    std::mutex mu_;
    std::vector<mpq_class> values_;
};

BernoulliTable& bernoulli_table() {
    static BernoulliTable t;
    return t;
}

Real real_from_mpq(const mpq_class& q) {
    Real num = 0, den = 0;
    mpfr_set_z(num.backend().data(), q.get_num().get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.backend().data(), q.get_den().get_mpz_t(), MPFR_RNDN);
    return num / den;
}

// Stirling series coefficients B_{2k} / (2k (2k-1)), k = 1..count,
// cached per working precision.
const std::vector<Real>& stirling_coefficients(std::size_t count) {
    static std::mutex mu;
    static std::map<unsigned, std::vector<Real>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& coeffs = cache[precision_bits()];
    while (coeffs.size() < count) {
        std::size_t k = coeffs.size() + 1;
        mpq_class c = bernoulli_table().at(2 * k) / mpq_class(static_cast<unsigned long>(2 * k * (2 * k - 1)));
        c.canonicalize();
        coeffs.push_back(real_from_mpq(c));
    }
    return coeffs;
}

// Shift radius: beyond |z| >= R the Stirling series reaches the round-off
// unit before its divergent turn (optimal term ~ exp(-2 pi |z|)).
Real shift_radius() {
    Real r = Real(precision_bits() + 24) * Real("0.1103178");
    return r < 40 ? Real(40) : r + 8;
}

Complex log_gamma_stirling(const Complex& z) {
    using boost::multiprecision::log;

    // log Gamma(z) = (z - 1/2) log z - z + log(2 pi)/2 + sum_k c_k z^{1-2k}
    Complex lz = lfs::log(z);
    Complex result = (z - Complex(Real(1) / 2)) * lz - z;
    result.re += log(2 * pi()) / 2;

    Complex inv = Complex(Real(1)) / z;
    Complex inv2 = inv * inv;
    Complex zpow = inv;
    Real scale = abs(result);
    if (scale < 1) scale = 1;
    Real target = ldexp(scale, -static_cast<long>(precision_bits() + 8));

    const std::size_t max_terms = 220;
    const auto& coeffs = stirling_coefficients(max_terms);
    for (std::size_t k = 0; k < max_terms; ++k) {
        Complex term = coeffs[k] * zpow;
        result += term;
        if (abs(term) < target) return result;
        zpow *= inv2;
    }
    throw std::runtime_error("log_gamma: Stirling series did not reach working precision");
}

}  // namespace

Complex log_gamma(const Complex& z) {
    using boost::multiprecision::floor;
    if (z.im == 0 && z.re <= 0 && floor(z.re) == z.re)
        throw std::domain_error("log_gamma at a nonpositive integer");

    if (z.re < Real(1) / 2) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        const Real& p = pi();
        Complex pz{p * z.re, p * z.im};
        using boost::multiprecision::cos;
        using boost::multiprecision::cosh;
        using boost::multiprecision::sin;
        using boost::multiprecision::sinh;
        Complex sin_pz{sin(pz.re) * cosh(pz.im), cos(pz.re) * sinh(pz.im)};
        return lfs::log(Complex(p)) - lfs::log(sin_pz) - log_gamma(Complex(1 - z.re, -z.im));
    }

    Real r = shift_radius();
    if (abs(z) >= r) return log_gamma_stirling(z);

    // Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1)); one log of the product
    // keeps the shift cheap.  The branch of the result may differ from the
    // principal one by 2 pi i k, which exp() cancels.
    Complex w = z;
    Complex prod{Real(1), Real(0)};
    while (abs(w) < r) {
        prod *= w;
        w.re += 1;
    }
    return log_gamma_stirling(w) - lfs::log(prod);
}

Complex gamma(const Complex& z) { return exp(log_gamma(z)); }

Real abs_gamma_upper_bound(const Real& x, const Real& y) {
    // For x >= 0, y > 0:  |Gamma(x+iy)| <= sqrt(2 pi) |z|^(x-1/2) e^(-pi y / 2) e^(1/(3|z|)).
    // From  Re[(z-1/2) log z] = (x-1/2) log|z| - y arg(z),  arg(z) >= pi/2 - x/y,
    // and the Binet remainder bound |mu(z)| <= 1/(3|z|) on Re z >= 0.
    using boost::multiprecision::exp;
    using boost::multiprecision::hypot;
    using boost::multiprecision::log;
    using boost::multiprecision::sqrt;
    if (x < 0 || y <= 0) throw std::domain_error("abs_gamma_upper_bound requires x >= 0, y > 0");
    Real zabs = hypot(x, y);
    Real lg = log(2 * pi()) / 2 + (x - Real(1) / 2) * log(zabs) - pi() * y / 2 + 1 / (3 * zabs);
    return exp(lg);
}

}  // namespace lfs
