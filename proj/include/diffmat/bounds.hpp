#pragma once

#include "diffmat/charfn.hpp"
#include "diffmat/params.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace diffmat {

/// log10 of the main asymptotic term,
///   g^{k lambda g + (3k-4)(k-1)/4} / sqrt((2 pi lambda)^{C(k,2)(g-1)}).
/// Valid as an approximation only in the large-lambda regime (see
/// growth_check); always computable.
inline double asymptotic_count_log10(const Params& p) {
    const double correction = (3.0 * p.k - 4.0) * (p.k - 1.0) / 4.0;
    return (static_cast<double>(p.k) * p.t + correction) * std::log10(static_cast<double>(p.g)) -
           0.5 * p.d * std::log10(two_pi * static_cast<double>(p.lambda));
}

struct LuFactors {
    double L = 0.0;
    double U = 0.0;
    double D1 = 0.0;  // 1 / max-abs-row-sum of Q^{-1}
    double D2 = 0.0;  // max-abs-row-sum of Q
};

// Box constants witnessing [-D1 d, D1 d]^d within Q[-d, d]^d within
// [-D2 d, D2 d]^d for the square-root block Q.  With the closed form
// Q = aI + bJ these are D1 = 1/g exactly and D2 = a + b(3-g).
inline void box_constants(int g, double& d1, double& d2) {
    const SqrtBlock q = sqrt_block(g);
    const SqrtBlock qi = sqrt_block_inv(g);
    d2 = std::abs(q.a + q.b) + (g - 2) * std::abs(q.b);
    d1 = 1.0 / (std::abs(qi.a + qi.b) + (g - 2) * std::abs(qi.b));
}

/// The two bracket factors of the return-probability sandwich:
///   L = [1 + t^2 (d delta)^6]^{-1/2} [1 - (d delta)^4 / 3]^t
///       [1 - exp(-(t/2)(D1 delta)^2)]^{d/2}
///   U = [1 + (d delta)^6 / 4]^{t/2} [1 + (d delta)^4 / 3]^t
///       [1 - exp(-t (D2 delta)^2)]^{d/2}
inline LuFactors lu_factors(const Params& p, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("lu_factors: delta must be positive");
    LuFactors f;
    box_constants(p.g, f.D1, f.D2);
    const double t = static_cast<double>(p.t);
    const double dd = p.d * delta;
    const double half_d = 0.5 * p.d;
    f.L = std::pow(1.0 + t * t * std::pow(dd, 6), -0.5) *
          std::pow(1.0 - std::pow(dd, 4) / 3.0, t) *
          std::pow(1.0 - std::exp(-0.5 * t * f.D1 * f.D1 * delta * delta), half_d);
    f.U = std::pow(1.0 + std::pow(dd, 6) / 4.0, 0.5 * t) *
          std::pow(1.0 + std::pow(dd, 4) / 3.0, t) *
          std::pow(1.0 - std::exp(-t * f.D2 * f.D2 * delta * delta), half_d);
    return f;
}

struct BoundsReport {
    double delta = 0.0;
    bool delta_ok = false;   // delta < (8/5) g^{-k-3} k^{-2}
    bool t_ok = false;       // t < 2 (d delta)^{-3}, strict
    bool growth_ok = false;  // k log g < (1/6) log t
    bool parity_case = false;
    bool rigorous = false;
    double L = 0.0, U = 0.0, D1 = 0.0, D2 = 0.0;
    double prefactor = 0.0;  // g^{(g/2)C(k,2) + C(k-1,2)} / (2 pi t)^{d/2}
    double prefactor_log10 = 0.0;
    double remainder = 0.0;  // exp(-(11/192) g^{-k} t delta^2)
    double lower = 0.0;
    double upper = 0.0;
    double asymptotic_log10 = 0.0;
};

/// Two-sided bounds on P(X_t = 0):
///   prefactor*L - remainder <= P <= prefactor*U + remainder
/// when g is odd or lambda is even; in the obstructed parity case (g even,
/// lambda odd) the whole primary contribution cancels and P <= remainder.
/// Inadmissible delta/t produce the same numbers flagged non-rigorous.
inline BoundsReport probability_bounds(const Params& p, double delta) {
    if (!(delta > 0.0)) throw std::domain_error("probability_bounds: delta must be positive");
    BoundsReport r;
    r.delta = delta;
    const double g = p.g;
    const double t = static_cast<double>(p.t);
    r.delta_ok = delta < 1.6 * std::pow(g, -(p.k + 3.0)) / (static_cast<double>(p.k) * p.k);
    r.t_ok = t * std::pow(p.d * delta, 3) < 2.0;
    r.growth_ok = p.k * std::log(g) < std::log(t) / 6.0;
    r.parity_case = p.g % 2 == 0 && p.lambda % 2 == 1;

    const LuFactors f = lu_factors(p, delta);
    r.L = f.L;
    r.U = f.U;
    r.D1 = f.D1;
    r.D2 = f.D2;
    r.prefactor_log10 =
        (0.5 * g * pair_count(p.k) + pair_count(p.k - 1)) * std::log10(g) -
        0.5 * p.d * std::log10(two_pi * t);
    r.prefactor = std::pow(10.0, r.prefactor_log10);
    r.remainder = std::exp(-(11.0 / 192.0) * std::pow(g, -p.k) * t * delta * delta);
    if (r.parity_case) {
        r.lower = 0.0;
        r.upper = r.remainder;
        r.rigorous = r.delta_ok;
    } else {
        r.lower = r.prefactor * r.L - r.remainder;
        r.upper = r.prefactor * r.U + r.remainder;
        r.rigorous = r.delta_ok && r.t_ok;
    }
    r.asymptotic_log10 = asymptotic_count_log10(p);
    return r;
}

struct PowerBounds {
    double lower;
    double upper;
};

/// For z with positive real part and alpha(z,t) = 1 - C(t,2) beta^2 > 0,
/// beta = Im(z)/Re(z):
///   upper = Re(z)^t (1 + beta^2)^{t/2},
///   lower = upper * (1 + [t/alpha]^2 beta^2)^{-1/2},
/// and lower <= Re(z^t) <= upper.
inline PowerBounds complex_power_bounds(std::complex<double> z, long t) {
    if (t < 1) throw std::domain_error("complex_power_bounds: t must be >= 1");
    if (!(z.real() > 0.0)) throw std::domain_error("complex_power_bounds: need Re(z) > 0");
    const double beta = z.imag() / z.real();
    const double alpha = 1.0 - 0.5 * t * (t - 1.0) * beta * beta;
    if (!(alpha > 0.0)) throw std::domain_error("complex_power_bounds: need alpha(z,t) > 0");
    PowerBounds b;
    b.upper = std::pow(z.real(), static_cast<double>(t)) *
              std::pow(1.0 + beta * beta, 0.5 * t);
    const double ta = t / alpha;
    b.lower = b.upper / std::sqrt(1.0 + ta * ta * beta * beta);
    return b;
}

struct SandwichBounds {
    double lower;
    double mid;
    double upper;
};

/// sqrt(2 pi (1 - e^{-rho^2/2})) <= int_{-rho}^{rho} e^{-x^2/2} dx
///                               <= sqrt(2 pi (1 - e^{-rho^2})).
/// mid is the integral itself (via erf).
inline SandwichBounds gaussian_sandwich(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("gaussian_sandwich: rho must be positive");
    SandwichBounds s;
    s.lower = std::sqrt(two_pi * (1.0 - std::exp(-0.5 * rho * rho)));
    s.upper = std::sqrt(two_pi * (1.0 - std::exp(-rho * rho)));
    s.mid = std::sqrt(two_pi) * std::erf(rho / std::sqrt(2.0));
    return s;
}

struct TaylorDefects {
    double real_defect;  // <= 0 when the e^{-a} remainder bound holds
    double imag_defect;  // <= 0 when the e^{ib} remainder bound holds
};

/// Degree-j Taylor remainder bounds: the defect is
///   |e^{-a} - sum_{s<=j} (-a)^s/s!| - min(2 a^j/j!, a^{j+1}/(j+1)!)
/// and the analogue for e^{ib}; both must be <= 0 (up to float slack).
inline TaylorDefects taylor_bounds_check(double a, double b, int j) {
    if (j < 1 || j > 3) throw std::domain_error("taylor_bounds_check: j must be 1, 2 or 3");
    if (!(a >= 0.0)) throw std::domain_error("taylor_bounds_check: a must be >= 0");
    double fact = 1.0;
    double real_sum = 0.0, pow_a = 1.0;
    std::complex<double> imag_sum{0.0, 0.0};
    std::complex<double> pow_ib{1.0, 0.0};
    const std::complex<double> ib{0.0, b};
    for (int s = 0; s <= j; ++s) {
        if (s > 0) {
            fact *= s;
            pow_a *= -a;
            pow_ib *= ib;
        }
        real_sum += pow_a / fact;
        imag_sum += pow_ib / fact;
    }
    const double fj = fact;            // j!
    const double fj1 = fact * (j + 1); // (j+1)!
    const double aj = std::pow(a, j);
    const double bj = std::pow(std::abs(b), j);
    TaylorDefects d;
    d.real_defect = std::abs(std::exp(-a) - real_sum) -
                    std::min(2.0 * aj / fj, aj * a / fj1);
    d.imag_defect = std::abs(std::exp(ib) - imag_sum) -
                    std::min(2.0 * bj / fj, bj * std::abs(b) / fj1);
    return d;
}

struct GrowthParams {
    double epsilon0 = 0.0;
    double epsilon = 0.0;  // from k = (1/6 - epsilon) log t / log g
    double delta = 0.0;    // the schedule t^{-5/12}
    bool growth_ok = false;
    double log_remainder_ratio = 0.0;  // ln(remainder / prefactor)
    bool remainder_small = false;      // remainder < prefactor at these parameters
};

/// Where the parameters sit relative to the growth hypothesis
/// k < (1/6 - epsilon0) log(lambda g)/log(g), with the delta schedule
/// t^{-5/12} and the remainder-versus-prefactor comparison at that delta.
inline GrowthParams growth_check(const Params& p, double epsilon0) {
    if (!(epsilon0 > 0.0)) throw std::domain_error("growth_check: epsilon0 must be positive");
    GrowthParams g;
    g.epsilon0 = epsilon0;
    const double t = static_cast<double>(p.t);
    g.epsilon = 1.0 / 6.0 - p.k * std::log(static_cast<double>(p.g)) / std::log(t);
    g.delta = std::pow(t, -5.0 / 12.0);
    g.growth_ok = g.epsilon > epsilon0;
    const double log_prefactor =
        (0.5 * p.g * pair_count(p.k) + pair_count(p.k - 1)) * std::log(static_cast<double>(p.g)) -
        0.5 * p.d * std::log(two_pi * t);
    g.log_remainder_ratio =
        -(11.0 / 192.0) * std::pow(static_cast<double>(p.g), -p.k) * t * g.delta * g.delta -
        log_prefactor;
    g.remainder_small = g.log_remainder_ratio < 0.0;
    return g;
}

}  // namespace diffmat
