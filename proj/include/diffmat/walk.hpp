#pragma once

#include "diffmat/budget.hpp"
#include "diffmat/errors.hpp"
#include "diffmat/parallel.hpp"
#include "diffmat/params.hpp"
#include "diffmat/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace diffmat {

// One matrix column: k residues mod g, first row first.
using Column = std::vector<std::uint8_t>;

// Exact integer walk increment V = g * Z(x); every coordinate is g-1 or -1.
struct Increment {
    std::vector<std::int64_t> v;
};

inline std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > ~std::uint64_t{0} / base) return ~std::uint64_t{0};
        r *= base;
    }
    return r;
}

inline std::uint64_t column_count(const Params& p, bool normalized = false) {
    return saturating_pow(p.g, normalized ? p.k - 1 : p.k);
}

// Columns are ordered lexicographically, first row most significant; the
// normalized family fixes the first row to 0.
inline Column column_from_index(const Params& p, std::uint64_t index, bool normalized = false) {
    Column x(p.k, 0);
    const int first = normalized ? 1 : 0;
    for (int row = p.k - 1; row >= first; --row) {
        x[row] = static_cast<std::uint8_t>(index % p.g);
        index /= p.g;
    }
    return x;
}

/// The embedding of one column: v[({i,j},a)] = g-1 when x_i - x_j = a (mod g)
/// and -1 otherwise.  Within each pair block either exactly one coordinate is
/// g-1, or (when the difference is 0) the whole block is -1.
inline Increment z_map(const Params& p, const Column& x) {
    Increment inc;
    inc.v.assign(p.d, -1);
    for (int i = 1; i <= p.k; ++i)
        for (int j = i + 1; j <= p.k; ++j) {
            const int a = (static_cast<int>(x[i - 1]) - static_cast<int>(x[j - 1]) + p.g) % p.g;
            if (a != 0) inc.v[flat_index(p, {i, j}, a)] = p.g - 1;
        }
    return inc;
}

/// Row-pair differences of every column, the hot lookup shared by the
/// characteristic function, the DFT counter and the membership scans.
struct ColumnTable {
    std::uint64_t columns = 0;
    long pairs = 0;
    std::vector<std::uint8_t> diff;  // [col * pairs + pair_rank]

    std::uint8_t at(std::uint64_t col, long pair) const { return diff[col * pairs + pair]; }
};

inline ColumnTable make_column_table(const Params& p, const Budget& budget = {},
                                     bool normalized = false) {
    const std::uint64_t n = column_count(p, normalized);
    if (n > budget.max_columns)
        throw resource_error("column enumeration budget exceeded: need " + std::to_string(n) +
                             " columns, budget " + std::to_string(budget.max_columns));
    ColumnTable tab;
    tab.columns = n;
    tab.pairs = pair_count(p.k);
    tab.diff.resize(n * static_cast<std::uint64_t>(tab.pairs));
    Column x(p.k, 0);
    for (std::uint64_t c = 0; c < n; ++c) {
        long q = 0;
        for (int i = 0; i < p.k; ++i)
            for (int j = i + 1; j < p.k; ++j)
                tab.diff[c * tab.pairs + q++] =
                    static_cast<std::uint8_t>((static_cast<int>(x[i]) - static_cast<int>(x[j]) + p.g) % p.g);
        // odometer step, least significant row last
        for (int row = p.k - 1; row >= (normalized ? 1 : 0); --row) {
            if (++x[row] < p.g) break;
            x[row] = 0;
        }
    }
    return tab;
}

/// Visits all g^k columns (or the g^{k-1} normalized ones) in lexicographic
/// order.  fn receives (index, column).
template <typename Fn>
void for_each_column(const Params& p, bool normalized, const Budget& budget, Fn&& fn) {
    const std::uint64_t n = column_count(p, normalized);
    if (n > budget.max_columns)
        throw resource_error("column enumeration budget exceeded: need " + std::to_string(n) +
                             " columns, budget " + std::to_string(budget.max_columns));
    Column x(p.k, 0);
    for (std::uint64_t c = 0; c < n; ++c) {
        fn(c, static_cast<const Column&>(x));
        for (int row = p.k - 1; row >= (normalized ? 1 : 0); --row) {
            if (++x[row] < p.g) break;
            x[row] = 0;
        }
    }
}

inline std::vector<Column> enumerate_columns(const Params& p, bool normalized = false,
                                             const Budget& budget = {}) {
    std::vector<Column> out;
    out.reserve(column_count(p, normalized));
    for_each_column(p, normalized, budget, [&](std::uint64_t, const Column& x) { out.push_back(x); });
    return out;
}

// Accumulated walk state: v_sum is the exact integer sum of the increments
// V = g Z(x); the walk itself sits at X_t = v_sum / g.
struct WalkPosition {
    std::vector<std::int64_t> v_sum;
    long steps = 0;

    bool at_origin() const {
        for (const auto v : v_sum) if (v != 0) return false;
        return true;
    }
};

inline WalkPosition walk_position(const Params& p, const std::vector<Column>& steps) {
    WalkPosition pos;
    pos.v_sum.assign(p.d, 0);
    for (const Column& x : steps) {
        const Increment inc = z_map(p, x);
        for (long q = 0; q < p.d; ++q) pos.v_sum[q] += inc.v[q];
    }
    pos.steps = static_cast<long>(steps.size());
    return pos;
}

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of P(X_t = 0): the fraction of t-step walks, with
/// increments Z of uniform random columns, that return to the origin.
/// Sampling is counter-based per sample index, so the result is identical for
/// any worker count and any platform.
inline McEstimate mc_return_probability(const Params& p, std::uint64_t samples,
                                        std::uint64_t seed, unsigned workers = 0) {
    if (samples < 1) throw std::domain_error("mc_return_probability: samples must be >= 1");
    const CounterRng rng(seed);
    const long pairs = pair_count(p.k);
    const std::uint64_t chunk = 8192;
    const std::uint64_t n_chunks = (samples + chunk - 1) / chunk;
    std::vector<std::uint64_t> hits(n_chunks, 0);
    parallel_chunks(
        n_chunks,
        [&](std::uint64_t c) {
            std::vector<long> counts(pairs * p.g);
            std::vector<int> col(p.k);
            std::uint64_t h = 0;
            const std::uint64_t lo = c * chunk;
            const std::uint64_t hi = std::min(samples, lo + chunk);
            for (std::uint64_t s = lo; s < hi; ++s) {
                std::fill(counts.begin(), counts.end(), 0);
                std::uint64_t ctr = s * static_cast<std::uint64_t>(p.t) * p.k;
                for (long step = 0; step < p.t; ++step) {
                    for (int r = 0; r < p.k; ++r) col[r] = rng.residue(ctr++, p.g);
                    long q = 0;
                    for (int i = 0; i < p.k; ++i)
                        for (int j = i + 1; j < p.k; ++j) {
                            ++counts[q * p.g + (col[i] - col[j] + p.g) % p.g];
                            ++q;
                        }
                }
                // the walk is back at 0 iff every pair realizes every
                // difference exactly lambda times
                bool returned = true;
                for (long q = 0; returned && q < pairs; ++q)
                    for (int a = 0; a < p.g; ++a)
                        if (counts[q * p.g + a] != p.lambda) {
                            returned = false;
                            break;
                        }
                h += returned ? 1 : 0;
            }
            hits[c] = h;
        },
        workers);
    std::uint64_t total = 0;
    for (const auto h : hits) total += h;
    McEstimate e;
    e.hits = total;
    e.samples = samples;
    e.seed = seed;
    e.p_hat = static_cast<double>(total) / static_cast<double>(samples);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(samples));
    return e;
}

}  // namespace diffmat
