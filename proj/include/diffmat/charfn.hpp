#pragma once

#include "diffmat/bigint.hpp"
#include "diffmat/parallel.hpp"
#include "diffmat/walk.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

namespace diffmat {

// A frequency point in R^d (radians), indexed like the walk coordinates.
using Theta = std::vector<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Representative of each coordinate in [-pi, pi).
inline Theta torus_reduce(Theta th) {
    for (double& v : th) {
        v = std::remainder(v, two_pi);
        if (v >= std::numbers::pi) v -= two_pi;
    }
    return th;
}

// Distance from x to the nearest multiple of 2*pi.
inline double circle_dist(double x) { return std::abs(std::remainder(x, two_pi)); }

// theta . Z(x) for one column: the realized-difference coordinates contribute
// theta_{p,diff} each, and the -1/g background contributes -sum(theta)/g.
inline double theta_dot_z(const Params& p, const Theta& th, const ColumnTable& tab,
                          std::uint64_t col, double coord_sum) {
    double s = -coord_sum / p.g;
    const std::uint8_t* diffs = &tab.diff[col * tab.pairs];
    for (long q = 0; q < tab.pairs; ++q) {
        const int a = diffs[q];
        if (a != 0) s += th[q * (p.g - 1) + (a - 1)];
    }
    return s;
}

// z^n by binary exponentiation; deterministic operation order.
inline std::complex<double> pow_int(std::complex<double> z, std::uint64_t n) {
    std::complex<double> r{1.0, 0.0};
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

/// Characteristic function of one walk step,
/// Phi(theta) = g^{-k} sum_x exp(i theta . Z(x)).
/// The column sum uses fixed-size chunks folded pairwise, so parallel
/// evaluation reproduces the serial result bit for bit.
inline std::complex<double> phi(const Params& p, const Theta& th, const ColumnTable& tab) {
    const double coord_sum = std::accumulate(th.begin(), th.end(), 0.0);
    const std::uint64_t chunk = 4096;
    const std::uint64_t n_chunks = (tab.columns + chunk - 1) / chunk;
    std::vector<std::complex<double>> parts(n_chunks);
    auto work = [&](std::uint64_t c) {
        std::complex<double> s{0.0, 0.0};
        const std::uint64_t lo = c * chunk;
        const std::uint64_t hi = std::min(tab.columns, lo + chunk);
        for (std::uint64_t col = lo; col < hi; ++col)
            s += std::polar(1.0, theta_dot_z(p, th, tab, col, coord_sum));
        parts[c] = s;
    };
    if (n_chunks > 4)
        parallel_chunks(n_chunks, work);
    else
        for (std::uint64_t c = 0; c < n_chunks; ++c) work(c);
    return pairwise_sum(std::move(parts)) / static_cast<double>(tab.columns);
}

inline std::complex<double> phi(const Params& p, const Theta& th, const Budget& budget = {}) {
    return phi(p, th, make_column_table(p, budget));
}

/// theta^T M theta in closed per-block form:
/// sum over pairs of (1/g) sum_a theta_{p,a}^2 - (1/g^2) (sum_a theta_{p,a})^2.
inline double quad_form(const Params& p, const Theta& th) {
    const long pairs = pair_count(p.k);
    const double g = p.g;
    double total = 0.0;
    for (long q = 0; q < pairs; ++q) {
        double sq = 0.0, lin = 0.0;
        for (int a = 0; a < p.g - 1; ++a) {
            const double v = th[q * (p.g - 1) + a];
            sq += v * v;
            lin += v;
        }
        total += sq / g - (lin / g) * (lin / g);
    }
    return total;
}

struct DetResult {
    double log_closed;     // -g * C(k,2) * ln g
    double numeric_check;  // block determinant by dense elimination
};

/// det(M): the closed form g^{-g C(k,2)} next to an independent numeric
/// route (partial-pivot elimination of one (g-1)x(g-1) block S, raised to the
/// block count).
inline DetResult det_m(const Params& p) {
    const int n = p.g - 1;
    const double g = p.g;
    std::vector<double> s(static_cast<std::size_t>(n) * n, -1.0 / (g * g));
    for (int i = 0; i < n; ++i) s[i * n + i] = (g - 1.0) / (g * g);
    double det_block = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(s[r * n + col]) > std::abs(s[piv * n + col])) piv = r;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(s[piv * n + c], s[col * n + c]);
            det_block = -det_block;
        }
        det_block *= s[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double f = s[r * n + col] / s[col * n + col];
            for (int c = col; c < n; ++c) s[r * n + c] -= f * s[col * n + c];
        }
    }
    DetResult out;
    out.log_closed = -g * pair_count(p.k) * std::log(g);
    out.numeric_check = std::pow(det_block, static_cast<double>(pair_count(p.k)));
    return out;
}

struct Moments {
    Rational m1;      // exact first moment; always 0
    double m2_match;  // |E[(theta.Z)^2] - theta^T M theta|, float route
};

/// First and second moment identities over the full column enumeration.  The
/// first moment is evaluated in exact rational arithmetic; the second-moment
/// identity is a float comparison against quad_form.
inline Moments exact_moments(const Params& p, const std::vector<Rational>& theta,
                             const Budget& budget = {}) {
    if (static_cast<long>(theta.size()) != p.d)
        throw std::domain_error("exact_moments: theta has wrong dimension");
    const ColumnTable tab = make_column_table(p, budget);

    Rational coord_sum = 0;
    for (const auto& v : theta) coord_sum += v;

    Rational sum;  // sum over columns of theta . V(x), V = g Z(x)
    for (std::uint64_t col = 0; col < tab.columns; ++col) {
        Rational dot = -coord_sum;
        for (long q = 0; q < tab.pairs; ++q) {
            const int a = tab.at(col, q);
            if (a != 0) dot += Rational(p.g) * theta[q * (p.g - 1) + (a - 1)];
        }
        sum += dot;
    }

    Moments out;
    out.m1 = sum / (Rational(big_pow(p.g, p.k)) * p.g);

    Theta th(p.d);
    for (long q = 0; q < p.d; ++q) th[q] = theta[q].convert_to<double>();
    const double cs = std::accumulate(th.begin(), th.end(), 0.0);
    double second = 0.0;
    for (std::uint64_t col = 0; col < tab.columns; ++col) {
        const double dz = theta_dot_z(p, th, tab, col, cs);
        second += dz * dz;
    }
    second /= static_cast<double>(tab.columns);
    out.m2_match = std::abs(second - quad_form(p, th));
    return out;
}

// One pair block of the symmetric square root: Q = a I + b J with Q^2 = S.
// Eigenvalues are 1/g on the all-ones direction and 1/sqrt(g) on its
// complement.
struct SqrtBlock {
    double a;
    double b;
};

inline SqrtBlock sqrt_block(int g) {
    const double a = 1.0 / std::sqrt(static_cast<double>(g));
    return {a, (1.0 / g - a) / (g - 1)};
}

inline SqrtBlock sqrt_block_inv(int g) {
    const double c = std::sqrt(static_cast<double>(g));
    return {c, (g - c) / (g - 1)};
}

inline Theta apply_block(const Params& p, const Theta& th, SqrtBlock q) {
    Theta out(th.size());
    const long pairs = pair_count(p.k);
    for (long pr = 0; pr < pairs; ++pr) {
        double s = 0.0;
        for (int a = 0; a < p.g - 1; ++a) s += th[pr * (p.g - 1) + a];
        for (int a = 0; a < p.g - 1; ++a) {
            const long idx = pr * (p.g - 1) + a;
            out[idx] = q.a * th[idx] + q.b * s;
        }
    }
    return out;
}

// M theta: per block, S v = (1/g) v - (1/g^2) (sum v) 1.
inline Theta apply_m(const Params& p, const Theta& th) {
    const double g = p.g;
    return apply_block(p, th, SqrtBlock{1.0 / g, -1.0 / (g * g)});
}

// P theta, with P the block-diagonal symmetric square root of M.
inline Theta apply_sqrt(const Params& p, const Theta& th) {
    return apply_block(p, th, sqrt_block(p.g));
}

inline Theta apply_sqrt_inv(const Params& p, const Theta& th) {
    return apply_block(p, th, sqrt_block_inv(p.g));
}

}  // namespace diffmat
