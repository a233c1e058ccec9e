#pragma once

#include "diffmat/charfn.hpp"
#include "diffmat/walk.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace diffmat {

// Coefficients of a full-modulus frequency over the generator vectors, one
// residue in 0..g-1 per pair {i,j} with i < j < k, in lexicographic order.
// For k <= 2 the vector is empty and the only such frequency is 0.
struct LatticeCoeffs {
    std::vector<int> c;
    friend bool operator==(const LatticeCoeffs&, const LatticeCoeffs&) = default;
};

inline long coeff_count(int k) { return pair_count(k - 1); }

/// Generator vector for the pair {i,j}, i < j < k: supported on the pair
/// blocks {i,j}, {i,k}, {j,k} with coordinates n, g-n, n (times 2*pi/g).
inline Theta building_block(const Params& p, int i, int j) {
    if (i < 1 || i >= j || j >= p.k)
        throw std::domain_error("building_block: need 1 <= i < j < k");
    Theta alpha(p.d, 0.0);
    for (int n = 1; n < p.g; ++n) {
        alpha[flat_index(p, {i, j}, n)] = two_pi * n / p.g;
        alpha[flat_index(p, {i, p.k}, n)] = two_pi * (p.g - n) / p.g;
        alpha[flat_index(p, {j, p.k}, n)] = two_pi * n / p.g;
    }
    return alpha;
}

/// Sum of c_{ij} generator vectors, reduced into [-pi, pi)^d.  All arithmetic
/// is done on the integer numerators of the 2*pi/g grid, so coordinates are
/// exact multiples of 2*pi/g.
inline Theta expand_lattice(const Params& p, const LatticeCoeffs& coeffs) {
    if (static_cast<long>(coeffs.c.size()) != coeff_count(p.k))
        throw std::domain_error("expand_lattice: wrong coefficient count");
    for (const int c : coeffs.c)
        if (c < 0 || c >= p.g) throw std::domain_error("expand_lattice: coefficient out of 0..g-1");
    std::vector<long> num(p.d, 0);
    long idx = 0;
    for (int i = 1; i < p.k; ++i)
        for (int j = i + 1; j < p.k; ++j, ++idx) {
            const long c = coeffs.c[idx];
            if (c == 0) continue;
            for (int n = 1; n < p.g; ++n) {
                num[flat_index(p, {i, j}, n)] += c * n;
                num[flat_index(p, {i, p.k}, n)] += c * (p.g - n);
                num[flat_index(p, {j, p.k}, n)] += c * n;
            }
        }
    Theta th(p.d);
    for (long q = 0; q < p.d; ++q) {
        long n = ((num[q] % p.g) + p.g) % p.g;
        if (2 * n >= p.g) n -= p.g;  // representative in [-g/2, g/2) <-> [-pi, pi)
        th[q] = two_pi * n / p.g;
    }
    return th;
}

/// Membership in the full-modulus set: theta . Z(x) must agree with
/// theta . Z(0) modulo 2*pi for every column x (agreement with one reference
/// column is equivalent to pairwise agreement).
inline bool lambda_membership(const Params& p, const Theta& th, double tol,
                              const ColumnTable& tab) {
    double coord_sum = 0.0;
    for (const double v : th) coord_sum += v;
    const double ref = -coord_sum / p.g;  // theta . Z(0)
    for (std::uint64_t col = 1; col < tab.columns; ++col)
        if (circle_dist(theta_dot_z(p, th, tab, col, coord_sum) - ref) > tol) return false;
    return true;
}

inline bool lambda_membership(const Params& p, const Theta& th, double tol = 1e-9,
                              const Budget& budget = {}) {
    return lambda_membership(p, th, tol, make_column_table(p, budget));
}

/// The c_{ij} coefficients of a full-modulus frequency, recovered from the
/// ({i,j},1) coordinates.  Throws if the membership test fails.
inline LatticeCoeffs decompose_lattice(const Params& p, const Theta& th, double tol = 1e-9,
                                       const Budget& budget = {}) {
    if (!lambda_membership(p, th, tol, budget))
        throw std::domain_error("decompose_lattice: frequency is not in the full-modulus set");
    const Theta red = torus_reduce(th);
    LatticeCoeffs out;
    out.c.reserve(coeff_count(p.k));
    for (int i = 1; i < p.k; ++i)
        for (int j = i + 1; j < p.k; ++j) {
            long c = std::lround(red[flat_index(p, {i, j}, 1)] * p.g / two_pi);
            if (c < 0) c += p.g;
            out.c.push_back(static_cast<int>(c % p.g));
        }
    return out;
}

/// All g^{C(k-1,2)} full-modulus frequencies in [-pi, pi)^d, ordered by their
/// coefficient vectors (odometer order, last coefficient fastest).
inline std::vector<Theta> enumerate_lambda0(const Params& p, const Budget& budget = {}) {
    const long m = coeff_count(p.k);
    const std::uint64_t total = saturating_pow(p.g, static_cast<int>(m));
    if (total > budget.max_columns)
        throw resource_error("lambda0 enumeration budget exceeded");
    std::vector<Theta> out;
    out.reserve(total);
    LatticeCoeffs coeffs;
    coeffs.c.assign(m, 0);
    for (std::uint64_t n = 0; n < total; ++n) {
        out.push_back(expand_lattice(p, coeffs));
        for (long q = m - 1; q >= 0; --q) {
            if (++coeffs.c[q] < p.g) break;
            coeffs.c[q] = 0;
        }
    }
    return out;
}

enum class Region { primary_box, remainder_a, remainder_b };

struct RegionTag {
    Region region = Region::remainder_b;
    LatticeCoeffs box_center;  // meaningful only for primary_box
};

/// Classifies theta for a box radius delta < pi/g:
///   primary_box  -- within delta (per coordinate, mod 2*pi) of a
///                   full-modulus frequency;
///   remainder_a  -- every coordinate within delta of the 2*pi/g grid, but
///                   the grid point is not full-modulus;
///   remainder_b  -- some coordinate farther than delta from the grid.
inline RegionTag classify_region(const Params& p, const Theta& th, double delta,
                                 const Budget& budget = {}, double tol = 1e-9) {
    if (!(delta > 0.0) || delta >= std::numbers::pi / p.g)
        throw std::domain_error("classify_region: need 0 < delta < pi/g");
    const double step = two_pi / p.g;
    Theta eta(p.d);
    for (long q = 0; q < p.d; ++q) {
        const long nearest = std::lround(th[q] / step);
        if (std::abs(th[q] - nearest * step) >= delta) return {Region::remainder_b, {}};
        long n = ((nearest % p.g) + p.g) % p.g;
        if (2 * n >= p.g) n -= p.g;
        eta[q] = step * n;
    }
    if (lambda_membership(p, eta, tol, budget))
        return {Region::primary_box, decompose_lattice(p, eta, tol, budget)};
    return {Region::remainder_a, {}};
}

struct StructureDefects {
    double hom_defect;  // additive relation within each pair block
    double row_defect;  // row relation across blocks
};

/// Numerical diagnostics of the two structural relations satisfied by
/// full-modulus frequencies: theta_{p,a} + theta_{p,b} = theta_{p,a+b} and
/// the per-row alternating sums, both modulo 2*pi (theta_{p,0} reads as 0).
inline StructureDefects structure_defects(const Params& p, const Theta& th) {
    const auto coord = [&](RowPair pr, int a) -> double {
        a = ((a % p.g) + p.g) % p.g;
        if (a == 0) return 0.0;
        return th[flat_index(p, pr, a)];
    };
    double hom = 0.0;
    for (int i = 1; i <= p.k; ++i)
        for (int j = i + 1; j <= p.k; ++j)
            for (int a = 1; a < p.g; ++a)
                for (int b = 1; b < p.g; ++b) {
                    const double v = coord({i, j}, a) + coord({i, j}, b) - coord({i, j}, a + b);
                    hom = std::max(hom, circle_dist(v));
                }
    double row = 0.0;
    for (int i = 1; i <= p.k; ++i)
        for (int a = 1; a < p.g; ++a) {
            double s = 0.0;
            for (int m = 1; m < i; ++m) s += coord({m, i}, p.g - a);
            for (int m = i + 1; m <= p.k; ++m) s += coord({i, m}, a);
            row = std::max(row, circle_dist(s));
        }
    return {hom, row};
}

}  // namespace diffmat
