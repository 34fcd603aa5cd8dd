#include "lfs/contour.hpp"

#include "lfs/gamma.hpp"

#include <stdexcept>

namespace lfs {

Truncation choose_truncation(const TailMajorant& majorant, const Real& tip_budget,
                             const Real& max_height, const Real& min_height) {
    // Integral comparison on unit steps: for decreasing M,
    //   \int_Y^inf M(y) dy <= sum_{k>=0} M(Y + k).
    // The sum is cut when terms fall below a sliver of the budget and the
    // remainder is bounded geometrically by the last observed ratio.
    const Real two_pi = 2 * pi();
    Real y = min_height < 8 ? Real(8) : min_height;
    while (true) {
        if (y > max_height)
            throw std::runtime_error("contour truncation exceeds the configured maximum height");
        Real sum = 0;
        Real prev = 0;
        bool converged = false;
        Real term = 0;
        for (int k = 0; k < 400; ++k) {
            term = majorant(y + k);
            sum += term;
            if (k > 0 && term < tip_budget / 1000 && term < prev) {
                Real ratio = term / prev;
                if (ratio < Real("0.9")) {
                    sum += term * ratio / (1 - ratio);
                    converged = true;
                    break;
                }
            }
            prev = term;
        }
        if (converged) {
            Real bound = 2 * sum / two_pi;  // both tails
            if (bound <= tip_budget) return {y, bound};
        }
        y += 8;
    }
}

QuadratureResult integrate_vertical(const std::function<Complex(const Complex&)>& f,
                                    const TailMajorant& majorant, const Real& tol,
                                    const QuadratureOptions& opts) {
    if (tol <= 0) throw std::invalid_argument("integrate_vertical: tol must be positive");
    {
        Real certifiable = ldexp(Real(1), -static_cast<long>(precision_bits()) + 48);
        if (tol < certifiable)
            throw std::runtime_error("integrate_vertical: tol below certifiable resolution at this precision");
    }

    Truncation tr = choose_truncation(majorant, tol / 100, opts.max_height);

    const Real h = Real(1) / (2 * opts.steps_per_unit);  // fine step
    const long K = (tr.height / h).convert_to<long>() + 1;

    Complex sum_fine{Real(0), Real(0)};
    Complex sum_coarse{Real(0), Real(0)};
    Real abs_sum = 0;
    for (long k = -K; k <= K; ++k) {
        Complex v = f(Complex(opts.nu, h * k));
        sum_fine += v;
        if (k % 2 == 0) sum_coarse += v;
        abs_sum += abs(v);
    }
    const Real two_pi = 2 * pi();
    Complex fine = sum_fine * (h / two_pi);
    Complex coarse = sum_coarse * (2 * h / two_pi);

    Real disc = abs(fine - coarse);
    Real rounding = abs_sum * (h / two_pi) * ldexp(Real(K + 2), -static_cast<long>(precision_bits()) + 6);
    Real err = opts.safety * (disc + tr.tail_integral) + rounding;
    return {fine, err};
}

QuadratureResult cahen_mellin_exp(const Real& y, const Real& tol, const QuadratureOptions& opts) {
    if (y <= 0) throw std::invalid_argument("cahen_mellin_exp: y must be positive");
    using boost::multiprecision::pow;
    Real nu = opts.nu;
    Real yp = pow(y, -nu);
    auto integrand = [&y](const Complex& z) { return gamma(z) * lfs::pow(y, -z); };
    auto majorant = [nu, yp](const Real& height) {
        return abs_gamma_upper_bound(nu, height) * yp;
    };
    return integrate_vertical(integrand, majorant, tol, opts);
}

}  // namespace lfs
