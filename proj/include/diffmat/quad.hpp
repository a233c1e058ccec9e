#pragma once

#include "diffmat/bounds.hpp"
#include "diffmat/charfn.hpp"
#include "diffmat/rng.hpp"
#include "diffmat/walk.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace diffmat {

// Midpoint tensor rule over the box [-delta, delta]^d.
struct QuadratureSpec {
    long grid_per_axis = 9;  // odd, >= 3
    double delta = 0.0;
    long t = 0;
    std::uint64_t max_points = 20'000'000;
};

namespace detail {

inline std::uint64_t checked_grid_size(const Params& p, const QuadratureSpec& spec) {
    if (spec.grid_per_axis < 3 || spec.grid_per_axis % 2 == 0)
        throw std::domain_error("quadrature: grid_per_axis must be odd and >= 3");
    if (!(spec.delta > 0.0) || spec.delta >= std::numbers::pi / p.g)
        throw std::domain_error("quadrature: need 0 < delta < pi/g");
    if (p.d > 6) throw std::domain_error("quadrature: tensor grids limited to d <= 6");
    std::uint64_t points = 1;
    for (long q = 0; q < p.d; ++q) {
        points *= static_cast<std::uint64_t>(spec.grid_per_axis);
        if (points > spec.max_points)
            throw resource_error("quadrature: grid budget exceeded");
    }
    return points;
}

// Visits every grid point of the midpoint rule, chunked by the leading axis;
// fn(chunk, theta) must be safe to call concurrently for distinct chunks.
template <typename Fn>
void for_each_grid_point(const Params& p, const QuadratureSpec& spec, Fn&& fn) {
    const long n = spec.grid_per_axis;
    std::uint64_t inner = 1;
    for (long q = 1; q < p.d; ++q) inner *= static_cast<std::uint64_t>(n);
    std::vector<double> nodes(n);
    for (long i = 0; i < n; ++i) nodes[i] = -spec.delta + (2 * i + 1) * spec.delta / n;
    parallel_chunks(static_cast<std::uint64_t>(n), [&](std::uint64_t lead) {
        std::vector<long> digit(p.d, 0);
        digit[0] = static_cast<long>(lead);
        Theta th(p.d);
        for (std::uint64_t step = 0; step < inner; ++step) {
            for (long q = 0; q < p.d; ++q) th[q] = nodes[digit[q]];
            fn(lead, th);
            for (long q = p.d - 1; q >= 1; --q) {
                if (++digit[q] < n) break;
                digit[q] = 0;
            }
        }
    });
}

}  // namespace detail

/// Midpoint approximation of the box integral of Phi(theta)^t over
/// [-delta, delta]^d.  The imaginary part cancels by the theta -> -theta
/// symmetry up to quadrature noise.
inline std::complex<double> integrate_box_phi(const Params& p, const QuadratureSpec& spec,
                                              const Budget& budget = {}) {
    detail::checked_grid_size(p, spec);
    const ColumnTable tab = make_column_table(p, budget);
    std::vector<std::complex<double>> parts(spec.grid_per_axis);
    detail::for_each_grid_point(p, spec, [&](std::uint64_t lead, const Theta& th) {
        parts[lead] += pow_int(phi(p, th, tab), static_cast<std::uint64_t>(spec.t));
    });
    const double weight = std::pow(2.0 * spec.delta / spec.grid_per_axis, p.d);
    return pairwise_sum(std::move(parts)) * weight;
}

/// Midpoint approximation of the Gaussian box integral
/// int_{[-delta,delta]^d} exp(-(t/2) theta^T M theta) dtheta.
inline double integrate_box_gaussian(const Params& p, const QuadratureSpec& spec) {
    detail::checked_grid_size(p, spec);
    std::vector<double> parts(spec.grid_per_axis);
    detail::for_each_grid_point(p, spec, [&](std::uint64_t lead, const Theta& th) {
        parts[lead] += std::exp(-0.5 * spec.t * quad_form(p, th));
    });
    const double weight = std::pow(2.0 * spec.delta / spec.grid_per_axis, p.d);
    return pairwise_sum(std::move(parts)) * weight;
}

struct SandwichReport {
    double delta = 0.0;
    long t = 0;
    long grid_per_axis = 0;
    // integral comparison
    double box_integral = 0.0;  // (2 pi)^{-d} * real box integral of Phi^t
    double imag_over_real = 0.0;
    double lower_bound = 0.0;  // L g^{(g/2)C(k,2)} (2 pi t)^{-d/2}
    double upper_bound = 0.0;
    bool integral_ok = false;
    // pointwise estimates
    std::uint64_t points_checked = 0;
    std::uint64_t real_violations = 0;
    std::uint64_t imag_violations = 0;
    std::uint64_t lower_violations = 0;
    double eps_bound = 0.0;
    double max_eps = 0.0;
    double imag_bound = 0.0;
    double max_imag = 0.0;
    double min_real = 0.0;
    std::vector<std::string> offenders;  // first few violating points
};

/// Verifies, on the quadrature grid plus n_random uniform points of the box:
///  (i)  the sandwich L g^{(g/2)C(k,2)} (2 pi t)^{-d/2}
///         <= (2 pi)^{-d} int_B Phi^t <= U g^{(g/2)C(k,2)} (2 pi t)^{-d/2};
///  (ii) pointwise, Re Phi = e^{-q/2}(1 + eps) with
///         |eps| <= (1/6)(d delta)^4 e^{(d delta)^2/2},
///       |Im Phi| <= (d delta)^3/6, and Re Phi > 1/3 (d delta < 1 here).
/// Violations are reported, not thrown.
inline SandwichReport sandwich_report(const Params& p, const QuadratureSpec& spec,
                                      std::uint64_t n_random, std::uint64_t seed,
                                      const Budget& budget = {}) {
    const double dd = p.d * spec.delta;
    {
        const double g = p.g;
        const bool delta_ok =
            spec.delta < 1.6 * std::pow(g, -(p.k + 3.0)) / (static_cast<double>(p.k) * p.k);
        const bool t_ok = spec.t * dd * dd * dd < 2.0;
        if (!delta_ok || !t_ok)
            throw std::domain_error("sandwich_report: (delta, t) outside the admissible range");
    }
    detail::checked_grid_size(p, spec);
    const ColumnTable tab = make_column_table(p, budget);

    SandwichReport r;
    r.delta = spec.delta;
    r.t = spec.t;
    r.grid_per_axis = spec.grid_per_axis;
    r.eps_bound = std::pow(dd, 4) / 6.0 * std::exp(0.5 * dd * dd);
    r.imag_bound = std::pow(dd, 3) / 6.0;
    r.min_real = 1.0;

    const double slack = 1e-12;
    std::mutex mu;
    std::vector<std::complex<double>> parts(spec.grid_per_axis);
    auto check_point = [&](const Theta& th) -> std::complex<double> {
        const std::complex<double> ph = phi(p, th, tab);
        const double q = quad_form(p, th);
        const double eps = ph.real() * std::exp(0.5 * q) - 1.0;
        const double im = std::abs(ph.imag());
        const std::lock_guard<std::mutex> lock(mu);
        ++r.points_checked;
        r.max_eps = std::max(r.max_eps, std::abs(eps));
        r.max_imag = std::max(r.max_imag, im);
        r.min_real = std::min(r.min_real, ph.real());
        const bool bad_real = std::abs(eps) > r.eps_bound + slack;
        const bool bad_imag = im > r.imag_bound + slack;
        const bool bad_lower = !(ph.real() > 1.0 / 3.0 - slack);
        r.real_violations += bad_real;
        r.imag_violations += bad_imag;
        r.lower_violations += bad_lower;
        if ((bad_real || bad_imag || bad_lower) && r.offenders.size() < 8) {
            std::string s = "theta = (";
            for (long c = 0; c < p.d; ++c) s += (c ? "," : "") + std::to_string(th[c]);
            s += ")";
            r.offenders.push_back(s);
        }
        return ph;
    };

    detail::for_each_grid_point(p, spec, [&](std::uint64_t lead, const Theta& th) {
        parts[lead] += pow_int(check_point(th), static_cast<std::uint64_t>(spec.t));
    });
    const double weight = std::pow(2.0 * spec.delta / spec.grid_per_axis, p.d);
    const std::complex<double> raw = pairwise_sum(std::move(parts)) * weight;

    const CounterRng rng(seed);
    Theta th(p.d);
    for (std::uint64_t s = 0; s < n_random; ++s) {
        for (long q = 0; q < p.d; ++q) th[q] = rng.symmetric(s * p.d + q, spec.delta);
        check_point(th);
    }

    const double norm = std::pow(two_pi, -static_cast<double>(p.d));
    r.box_integral = raw.real() * norm;
    r.imag_over_real = raw.real() != 0.0 ? std::abs(raw.imag() / raw.real()) : std::abs(raw.imag());
    const LuFactors f = lu_factors(p, spec.delta);
    const double scale = std::pow(static_cast<double>(p.g), 0.5 * p.g * pair_count(p.k)) *
                         std::pow(two_pi * spec.t, -0.5 * p.d);
    r.lower_bound = f.L * scale;
    r.upper_bound = f.U * scale;
    r.integral_ok = r.lower_bound <= r.box_integral && r.box_integral <= r.upper_bound;
    return r;
}

}  // namespace diffmat
