#include "lfs/afe.hpp"

#include "lfs/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace lfs {

bool TestFunction::admissible() const {
    if (c > 0) return true;
    if (c < 0) return false;
    return abs(alpha) < pi();
}

Complex TestFunction::eval(const Complex& z) const {
    return exp(alpha * z + c * (z * z));
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    os << "g[a=" << alpha.re.convert_to<double>();
    double ai = alpha.im.convert_to<double>();
    if (ai != 0) os << (ai > 0 ? "+" : "") << ai << "i";
    os << ",c=" << c.convert_to<double>() << "]";
    return os.str();
}

namespace {

using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

// Gamma(z + shift)^2 / z along z = nu + i k h, cached per
// (shift, nu, h, precision) and extended on demand.
class GammaLine {
  public:
    GammaLine(Complex shift, Real nu, Real h)
        : shift_(std::move(shift)), nu_(std::move(nu)), h_(std::move(h)) {}

    void ensure(long K) {
        if (radius_ >= K) return;
        std::vector<Complex> next(2 * K + 1);
        for (long k = -K; k <= K; ++k) {
            if (-radius_ <= k && k <= radius_) {
                next[k + K] = values_[k + radius_];
                continue;
            }
            Complex z(nu_, h_ * k);
            Complex lg = log_gamma(z + shift_);
            next[k + K] = exp(lg + lg) / z;
        }
        values_ = std::move(next);
        radius_ = K;
    }

    // Gamma(z_k + shift)^2 / z_k; valid after ensure(|k|).
    const Complex& at(long k) const { return values_[k + radius_]; }

  private:
    Complex shift_;
    Real nu_;
    Real h_;
    long radius_ = -1;
    std::vector<Complex> values_;
};

std::string line_key(const Complex& shift, const Real& nu, const Real& h) {
    std::ostringstream os;
    os << precision_bits() << "|" << to_decimal(shift.re) << "|" << to_decimal(shift.im) << "|"
       << to_decimal(nu) << "|" << to_decimal(h);
    return os.str();
}

// Lookup and extension both run under the lock; the returned reference is
// stable (node values never move once radius covers the request).
GammaLine& gamma_line(const Complex& shift, const Real& nu, const Real& h, long K) {
    static std::mutex mu;
    static std::map<std::string, GammaLine> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = line_key(shift, nu, h);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, GammaLine(shift, nu, h)).first;
    it->second.ensure(K);
    return it->second;
}

// Node prefactors and truncation data for one (kind, s, g, fe).
struct AfeContour {
    int kind = 1;
    Complex s;
    TestFunction g;
    Real q_value;
    Real nu;
    Real h;  // fine step
    long K = 0;
    std::vector<Complex> pref;  // index k + K
    Real tail_int;              // (1/2 pi) int_{|y|>Y} |P|, before (Q/n)^nu scaling
    Real pref_abs_sum;
    Real safety;
};

AfeContour build_afe_contour(int kind, const Complex& s, const TestFunction& g,
                             const FunctionalEquationParams& fe, const Real& tol,
                             const QuadratureOptions& quad) {
    if (kind != 1 && kind != 2) throw std::invalid_argument("mellin kind must be 1 or 2");
    if (!g.admissible()) throw std::invalid_argument("test function violates the growth condition");

    const Real& nu = quad.nu;
    // nu > max(0, -Re(lambda/kappa + s-ish)) for the Mellin representation.
    Real nu_floor = (kind == 1) ? -(s.re + Real(1) / 2) : s.re - Real(3) / 2;
    if (!(nu > 0 && nu > nu_floor))
        throw std::invalid_argument("contour abscissa violates the Mellin precondition");

    {
        Real certifiable = ldexp(Real(1), -static_cast<long>(precision_bits()) + 48);
        if (tol < certifiable)
            throw std::runtime_error("afe: tolerance below certifiable resolution at this precision");
    }

    AfeContour C;
    C.kind = kind;
    C.s = s;
    C.g = g;
    C.q_value = fe.q_value;
    C.nu = nu;
    C.h = Real(1) / (2 * quad.steps_per_unit);
    C.safety = quad.safety;

    const Complex shift = (kind == 1) ? s + Complex(Real(1) / 2) : Complex(Real(3) / 2) - s;
    const Real xprime = nu + shift.re;
    if (xprime <= 0) throw std::invalid_argument("gamma argument off the right half plane");
    const Real tshift = boost::multiprecision::abs(shift.im);
    const Real t = boost::multiprecision::abs(s.im);
    const Real xu = (kind == 1) ? s.re + nu : s.re - nu;
    const Real a_re = g.alpha.re, a_im_abs = boost::multiprecision::abs(g.alpha.im);
    const Real c = g.c;

    auto majorant = [=](const Real& y) -> Real {
        Real gamma_part = abs_gamma_upper_bound(xprime, y - tshift);
        Real yd = y - t;
        if (yd < 0) yd = 0;
        Real gexp = a_re * xu + c * xu * xu + a_im_abs * (y + t) - c * yd * yd;
        return gamma_part * gamma_part * exp(gexp) / y;
    };

    Real qmax = C.q_value > 1 ? C.q_value : Real(1);
    Real budget = tol / (3 * pow(qmax, nu));
    Real min_height = 2 * (tshift + t) + 8;
    Truncation tr = choose_truncation(majorant, budget, quad.max_height, min_height);
    C.tail_int = tr.tail_integral;
    C.K = (tr.height / C.h).convert_to<long>() + 1;

    const GammaLine& line = gamma_line(shift, nu, C.h, C.K);
    C.pref.resize(2 * C.K + 1);
    C.pref_abs_sum = 0;
    for (long k = -C.K; k <= C.K; ++k) {
        Complex z(nu, C.h * k);
        Complex u = (kind == 1) ? s + z : s - z;
        C.pref[k + C.K] = line.at(k) * g.eval(u);
        C.pref_abs_sum += abs(C.pref[k + C.K]);
    }
    return C;
}

MellinValue eval_f(const AfeContour& C, long long n) {
    // f(., n) = (1/2 pi i) int P(z) (Q/n)^z dz with (Q/n)^{nu + i k h} built
    // from one exp and a unit-modulus power recurrence.
    const Real two_pi = 2 * pi();
    Real L = log(C.q_value) - log(Real(n));
    Real base = exp(C.nu * L);
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    Real hl = C.h * L;
    Complex u(cos(hl), sin(hl));

    Complex fine = C.pref[C.K];
    Complex coarse = fine;
    Complex t{Real(1), Real(0)};
    for (long k = 1; k <= C.K; ++k) {
        t *= u;
        Complex contrib = C.pref[C.K + k] * t + C.pref[C.K - k] * conj(t);
        fine += contrib;
        if (k % 2 == 0) coarse += contrib;
    }
    Complex value = fine * (base * C.h / two_pi);
    Complex value_coarse = coarse * (base * 2 * C.h / two_pi);

    Real disc = abs(value - value_coarse);
    Real rounding = base * C.pref_abs_sum * (C.h / two_pi) *
                    ldexp(Real(2 * C.K + 2), -static_cast<long>(precision_bits()) + 8);
    Real err = C.safety * (disc + base * C.tail_int) + rounding;
    return {value, err};
}

}  // namespace

MellinValue mellin_f(int kind, const Complex& s, long long n, const TestFunction& g,
                     const FunctionalEquationParams& fe, const Real& tol,
                     const QuadratureOptions& quad) {
    if (n < 1) throw std::invalid_argument("mellin_f: n must be >= 1");
    AfeContour C = build_afe_contour(kind, s, g, fe, tol, quad);
    return eval_f(C, n);
}

WeightVector build_weight_vector(const Complex& s, const TestFunction& g,
                                 const FunctionalEquationParams& fe, long long M,
                                 const AfeOptions& opts) {
    if (M < 8) throw std::invalid_argument("build_weight_vector: M too small");
    // The coefficient series must converge absolutely on Re = nu + Re(s).
    if (!(opts.quad.nu + s.re > Real("1.05")))
        throw std::invalid_argument("build_weight_vector: nu + Re(s) too small for the series identity");

    Real tol = opts.weight_tol;
    Real floor_tol = ldexp(Real(1), -static_cast<long>(precision_bits()) + 52);
    if (tol < floor_tol) tol = floor_tol;

    AfeContour c1 = build_afe_contour(1, s, g, fe, tol, opts.quad);
    AfeContour c2 = build_afe_contour(2, s, g, fe, tol, opts.quad);

    WeightVector wv{s, g, fe, {}, {}, Real(0), {Real(0), Real(0)}, opts.quad.safety};
    wv.weights.assign(M + 1, Complex());
    wv.errors.assign(M + 1, Real(0));

    const Real q = fe.q_value;
    for (long long n = 1; n <= M; ++n) {
        MellinValue f1 = eval_f(c1, n);
        MellinValue f2 = eval_f(c2, n);
        Real qn = q / n;
        Complex a1 = pow(qn, s);
        Complex a2 = pow(qn, Complex(Real(1)) - s);
        Complex w = a1 * f1.value + Real(fe.sign) * (a2 * f2.value);
        wv.weights[n] = w;
        wv.errors[n] = abs(a1) * f1.error_bound + abs(a2) * f2.error_bound;
        if (wv.errors[n] > wv.accuracy) wv.accuracy = wv.errors[n];
    }

    // Tail model: envelope fit of log|w_n| against x = sqrt(n / sqrt N) on the
    // top quartile, then the scale is inflated until the model dominates
    // every quartile point.
    const long long lo = std::max<long long>(M * 3 / 4, 2);
    const Real n4 = sqrt(sqrt(Real(fe.level)));
    auto xval = [&](long long n) { return sqrt(Real(n)) / n4; };

    const int windows = 12;
    std::vector<std::pair<double, double>> pts;
    for (int wdx = 0; wdx < windows; ++wdx) {
        long long a = lo + (M - lo + 1) * wdx / windows;
        long long b = lo + (M - lo + 1) * (wdx + 1) / windows - 1;
        if (b < a) continue;
        long long best = -1;
        Real best_abs = 0;
        for (long long n = a; n <= b; ++n) {
            Real m = abs(wv.weights[n]);
            if (m > best_abs) { best_abs = m; best = n; }
        }
        if (best < 0 || best_abs == 0) continue;
        pts.emplace_back(xval(best).convert_to<double>(),
                         static_cast<double>(log(best_abs).convert_to<double>()));
    }
    if (pts.size() < 3) throw std::runtime_error("tail model fit: not enough envelope points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
    double npts = static_cast<double>(pts.size());
    double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    if (!(slope < 0)) throw std::runtime_error("tail model fit: nonnegative slope");

    wv.tail_model.c_slope = Real(slope);
    Real k_scale = 0;
    for (long long n = lo; n <= M; ++n) {
        Real m = abs(wv.weights[n]) + wv.errors[n];
        Real need = m / exp(wv.tail_model.c_slope * xval(n));
        if (need > k_scale) k_scale = need;
    }
    wv.tail_model.k_scale = k_scale;
    return wv;
}

Complex coefficient_weight(const Complex& s, long long n, const TestFunction& g,
                           const FunctionalEquationParams& fe, const AfeOptions& opts) {
    Real tol = opts.weight_tol;
    Real floor_tol = ldexp(Real(1), -static_cast<long>(precision_bits()) + 52);
    if (tol < floor_tol) tol = floor_tol;
    MellinValue f1 = mellin_f(1, s, n, g, fe, tol, opts.quad);
    MellinValue f2 = mellin_f(2, s, n, g, fe, tol, opts.quad);
    Real qn = fe.q_value / n;
    return pow(qn, s) * f1.value + Real(fe.sign) * (pow(qn, Complex(Real(1)) - s) * f2.value);
}

Real tail_bound(long long M, const WeightVector& wv) {
    if (M < 1) throw std::invalid_argument("tail_bound: M must be >= 1");
    if (M > wv.horizon())
        throw std::invalid_argument("tail_bound: weights not computed through M");
    const Real C = wv.tail_model.c_slope;
    const Real K = wv.tail_model.k_scale;
    if (!(C < 0)) throw std::runtime_error("tail_bound: tail model slope must be negative");

    const Real n4 = sqrt(sqrt(Real(wv.fe.level)));
    auto xval = [&](long long n) { return sqrt(Real(n)) / n4; };

    // Prefix with exact d4; cut where 8 n^{3/2} e^{C x} is decreasing so the
    // remainder can be bounded by the integral.
    long long ncut = std::max<long long>(2 * M, 64);
    auto decreasing_at = [&](long long n) {
        // d/dn [ 1.5 log n + C x(n) ] < 0  with  dx/dn = 1 / (2 sqrt(n) n4)
        Real lhs = Real(3) / (2 * Real(n));
        Real rhs = -C / (2 * sqrt(Real(n)) * n4);
        return lhs < rhs;
    };
    while (!decreasing_at(ncut)) ncut *= 2;

    auto d4v = d4_table(ncut);
    Real prefix = 0;
    for (long long n = M + 1; n <= ncut; ++n) prefix += Real(d4v[n]) * exp(C * xval(n));

    // Remainder: sum_{n > ncut} d4(n) e^{Cx} <= int_ncut^inf 8 x^{3/2} e^{C x(x)} dx
    //          = 16 N^{5/4} int_U^inf u^4 e^{-au} du,  a = -C, U = x(ncut).
    Real a = -C;
    Real U = xval(ncut);
    Real n54 = pow(Real(wv.fe.level), Real(5) / 4);
    Real poly = U * U * U * U / a + 4 * U * U * U / (a * a) + 12 * U * U / (a * a * a) +
                24 * U / (a * a * a * a) + 24 / (a * a * a * a * a);
    Real remainder = 16 * n54 * exp(-a * U) * poly;

    return wv.safety * K * (prefix + remainder);
}

}  // namespace lfs
