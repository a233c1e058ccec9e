#pragma once

#include "diffmat/bounds.hpp"
#include "diffmat/charfn.hpp"
#include "diffmat/exact.hpp"
#include "diffmat/lattice.hpp"
#include "diffmat/rng.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace diffmat {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

// coordinates in (-1, 1): the float second-moment comparison needs O(1) scale
inline std::vector<Rational> random_rational_theta(const Params& p, const CounterRng& rng,
                                                   std::uint64_t base) {
    std::vector<Rational> th(p.d);
    for (long q = 0; q < p.d; ++q) {
        const long num = static_cast<long>(rng.value(base + 2 * q) % 1999) - 999;
        const long den = 1000 + static_cast<long>(rng.value(base + 2 * q + 1) % 997);
        th[q] = Rational(num, den);
    }
    return th;
}

inline Theta random_theta(const Params& p, const CounterRng& rng, std::uint64_t base,
                          double width) {
    Theta th(p.d);
    for (long q = 0; q < p.d; ++q) th[q] = rng.symmetric(base + q, width);
    return th;
}

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

}  // namespace detail

/// Moment and matrix identities: exact first moment, second-moment match,
/// square-root application, determinant.
inline std::vector<CheckResult> verify_moments(std::uint64_t seed, const Budget& budget = {}) {
    std::vector<CheckResult> out;
    const CounterRng rng(seed);
    for (const auto& [g, k] : {std::pair{2, 4}, std::pair{3, 3}}) {
        const Params p = make_params(g, k, 1);
        bool m1_zero = true;
        double worst_m2 = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto th = detail::random_rational_theta(p, rng, 10'000 * trial);
            const Moments m = exact_moments(p, th, budget);
            if (m.m1 != 0) m1_zero = false;
            worst_m2 = std::max(worst_m2, m.m2_match);
        }
        out.push_back({detail::cat("first moment vanishes exactly (g=", g, ",k=", k, ")"),
                       m1_zero, "100 random rational theta"});
        out.push_back({detail::cat("second moment matches quad_form (g=", g, ",k=", k, ")"),
                       worst_m2 <= 1e-12, detail::cat("max |diff| = ", worst_m2)});

        double worst_pp = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Theta th = detail::random_theta(p, rng, 700'000 + 1'000 * trial, 1.0);
            const Theta pp = apply_sqrt(p, apply_sqrt(p, th));
            const Theta mth = apply_m(p, th);
            for (long q = 0; q < p.d; ++q) worst_pp = std::max(worst_pp, std::abs(pp[q] - mth[q]));
        }
        out.push_back({detail::cat("P(P theta) = M theta (g=", g, ",k=", k, ")"),
                       worst_pp <= 1e-10, detail::cat("max coordinate error = ", worst_pp)});
    }
    // Q^2 = S entrywise, and the determinant identity, across small g, k
    double worst_q = 0.0, worst_det = 0.0;
    for (int g = 2; g <= 5; ++g) {
        const SqrtBlock q = sqrt_block(g);
        for (int r = 0; r < g - 1; ++r)
            for (int c = 0; c < g - 1; ++c) {
                double qq = 0.0;
                for (int m = 0; m < g - 1; ++m) {
                    const double qrm = q.b + (r == m ? q.a : 0.0);
                    const double qmc = q.b + (m == c ? q.a : 0.0);
                    qq += qrm * qmc;
                }
                const double s = (r == c ? (g - 1.0) : -1.0) / (static_cast<double>(g) * g);
                worst_q = std::max(worst_q, std::abs(qq - s));
            }
        for (int k = 2; k <= 5; ++k) {
            const DetResult det = det_m(make_params(g, k, 1));
            worst_det = std::max(worst_det,
                                 std::abs(det.numeric_check / std::exp(det.log_closed) - 1.0));
        }
    }
    out.push_back({"square-root block satisfies Q^2 = S (g <= 5)", worst_q <= 1e-12,
                   detail::cat("max entry error = ", worst_q)});
    out.push_back({"det(M) matches closed form (g,k <= 5)", worst_det <= 1e-10,
                   detail::cat("max relative error = ", worst_det)});
    return out;
}

/// Full-modulus frequency set: census, membership, structural defects,
/// closure under addition.
inline std::vector<CheckResult> verify_lattice(const Budget& budget = {}) {
    std::vector<CheckResult> out;
    for (const auto& [g, k] : {std::pair{2, 3}, {2, 4}, {3, 3}, {3, 4}, {5, 3}}) {
        const Params p = make_params(g, k, 1);
        const auto lambda0 = enumerate_lambda0(p, budget);
        const std::uint64_t expected = saturating_pow(g, static_cast<int>(coeff_count(k)));
        const ColumnTable tab = make_column_table(p, budget);
        bool all_member = true;
        double worst_hom = 0.0, worst_row = 0.0;
        for (const Theta& eta : lambda0) {
            if (!lambda_membership(p, eta, 1e-9, tab)) all_member = false;
            const StructureDefects d = structure_defects(p, eta);
            worst_hom = std::max(worst_hom, d.hom_defect);
            worst_row = std::max(worst_row, d.row_defect);
        }
        out.push_back({detail::cat("lambda0 census (g=", g, ",k=", k, ")"),
                       lambda0.size() == expected && all_member,
                       detail::cat("size ", lambda0.size(), ", expected ", expected)});
        out.push_back({detail::cat("structural defects <= 1e-9 (g=", g, ",k=", k, ")"),
                       worst_hom <= 1e-9 && worst_row <= 1e-9,
                       detail::cat("hom ", worst_hom, ", row ", worst_row)});
    }
    // closure under addition on two small instances
    for (const auto& [g, k] : {std::pair{2, 4}, std::pair{3, 3}}) {
        const Params p = make_params(g, k, 1);
        const auto lambda0 = enumerate_lambda0(p, budget);
        const ColumnTable tab = make_column_table(p, budget);
        bool closed = true;
        for (const Theta& a : lambda0)
            for (const Theta& b : lambda0) {
                Theta sum(p.d);
                for (long q = 0; q < p.d; ++q) sum[q] = a[q] + b[q];
                if (!lambda_membership(p, torus_reduce(sum), 1e-9, tab)) closed = false;
            }
        out.push_back({detail::cat("lambda0 closed under addition (g=", g, ",k=", k, ")"),
                       closed, detail::cat(lambda0.size(), "^2 sums tested")});
    }
    return out;
}

/// Analytic helper inequalities: Taylor remainders, complex powers, the
/// Gaussian sandwich.  Long-double property sweeps.
inline std::vector<CheckResult> verify_inequalities(std::uint64_t seed) {
    std::vector<CheckResult> out;
    const CounterRng rng(seed);

    double worst_taylor = -1.0;
    for (std::uint64_t i = 0; i < 100'000; ++i) {
        const double a = 10.0 * rng.real01(3 * i);
        const double b = rng.symmetric(3 * i + 1, 10.0);
        const int j = 1 + static_cast<int>(rng.value(3 * i + 2) % 3);
        const TaylorDefects d = taylor_bounds_check(a, b, j);
        worst_taylor = std::max({worst_taylor, d.real_defect, d.imag_defect});
    }
    out.push_back({"Taylor remainder bounds (100k sweep)", worst_taylor <= 1e-15,
                   detail::cat("max defect = ", worst_taylor)});

    double worst_pow = -1.0;
    std::uint64_t pow_cases = 0;
    for (std::uint64_t i = 0; pow_cases < 10'000; ++i) {
        const double re = 0.05 + 1.95 * rng.real01(4 * i);
        const double im = rng.symmetric(4 * i + 1, 1.0);
        const long t = 2 + static_cast<long>(rng.value(4 * i + 2) % 59);
        const std::complex<double> z{re, im};
        const double beta = im / re;
        if (1.0 - 0.5 * t * (t - 1.0) * beta * beta <= 0.0) continue;
        ++pow_cases;
        const PowerBounds pb = complex_power_bounds(z, t);
        // evaluate the oracle in long double to keep rounding below the slack
        std::complex<long double> zt{1.0L, 0.0L};
        const std::complex<long double> zl{re, im};
        for (long s = 0; s < t; ++s) zt *= zl;
        const long double target = zt.real();
        const long double scale = std::max<long double>(1.0L, std::abs(target));
        worst_pow = std::max(worst_pow,
                             static_cast<double>(std::max(pb.lower - target, target - pb.upper) / scale));
    }
    out.push_back({"complex power bounds (10k sweep)", worst_pow <= 1e-13,
                   detail::cat("max relative defect = ", worst_pow)});

    double worst_gauss = -1.0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        const double rho = 0.01 + 6.0 * rng.real01(900'000 + i);
        const SandwichBounds s = gaussian_sandwich(rho);
        worst_gauss = std::max({worst_gauss, s.lower - s.mid, s.mid - s.upper});
    }
    out.push_back({"Gaussian sandwich (10k sweep)", worst_gauss <= 1e-15,
                   detail::cat("max defect = ", worst_gauss)});
    return out;
}

/// Exact-count cross checks: brute vs DFT, parity zeros, divisibility, the
/// walk correspondence, and the k = 2 closed form.
inline std::vector<CheckResult> verify_counts(const Budget& budget = {}) {
    std::vector<CheckResult> out;
    struct Case { int g, k; long lambda; };
    for (const Case c : {Case{2, 2, 1}, {2, 2, 2}, {2, 3, 2}, {2, 3, 4}, {3, 3, 1}}) {
        const Params p = make_params(c.g, c.k, c.lambda);
        const BigCount brute = count_brute(p, budget);
        const BigCount dft = count_dft(p, budget).count;
        out.push_back({detail::cat("brute = dft (", c.g, ",", c.k, ",", c.lambda, ")"),
                       brute == dft, detail::cat(brute.str(), " vs ", dft.str())});
    }
    for (const Case c : {Case{2, 3, 1}, {2, 3, 3}}) {
        const Params p = make_params(c.g, c.k, c.lambda);
        const BigCount brute = count_brute(p, budget);
        const BigCount dft = count_dft(p, budget).count;
        out.push_back({detail::cat("parity obstruction zero (", c.g, ",", c.k, ",", c.lambda, ")"),
                       parity_obstruction(p) && brute == 0 && dft == 0,
                       detail::cat("brute ", brute.str(), ", dft ", dft.str())});
    }
    {
        const Params p = make_params(2, 3, 2);
        const BigCount count = count_brute(p, budget);
        const Rational prob = exact_return_probability(p, budget);
        const bool corr = Rational(count, big_pow(2, 12)) == prob;
        const bool divis = count % big_pow(2, p.t) == 0;
        out.push_back({"count(2,3,2) = 384", count == 384, count.str()});
        out.push_back({"correspondence count = g^{kt} P", corr, prob.str()});
        out.push_back({"count divisible by g^t", divis, ""});
    }
    {
        bool ok = true;
        std::string note;
        for (int g = 2; g <= 3; ++g)
            for (long lam = 1; lam <= 3; ++lam) {
                const Params p = make_params(g, 2, lam);
                BigCount expected = big_pow(g, p.t);
                BigCount fact = 1;
                for (long i = 2; i <= p.t; ++i) fact *= i;
                BigCount lam_fact = 1;
                for (long i = 2; i <= lam; ++i) lam_fact *= i;
                BigCount denom = 1;
                for (int i = 0; i < g; ++i) denom *= lam_fact;
                expected = expected * fact / denom;
                if (count_brute(p, budget) != expected) {
                    ok = false;
                    note = detail::cat("mismatch at g=", g, " lambda=", lam);
                }
            }
        out.push_back({"k = 2 closed form g^t (lambda g)!/(lambda!)^g", ok, note});
    }
    return out;
}

inline std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed,
                                             const Budget& budget = {}) {
    std::vector<CheckResult> out;
    const auto append = [&](std::vector<CheckResult> v) {
        for (auto& r : v) out.push_back(std::move(r));
    };
    if (suite == "moments" || suite == "all") append(verify_moments(seed, budget));
    if (suite == "lattice" || suite == "all") append(verify_lattice(budget));
    if (suite == "inequalities" || suite == "all") append(verify_inequalities(seed));
    if (suite == "counts" || suite == "all") append(verify_counts(budget));
    if (out.empty()) throw std::domain_error("verify: unknown suite '" + suite + "'");
    return out;
}

}  // namespace diffmat
