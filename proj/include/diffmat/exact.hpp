#pragma once

#include "diffmat/bigint.hpp"
#include "diffmat/charfn.hpp"
#include "diffmat/parallel.hpp"
#include "diffmat/walk.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace diffmat {

// No (g,k;lambda)-difference matrix over Z_g exists when g is even, lambda is
// odd and k >= 3.
inline bool parity_obstruction(const Params& p) {
    return p.g % 2 == 0 && p.lambda % 2 == 1 && p.k >= 3;
}

namespace detail {

// Pascal triangle of exact binomials up to n.
inline std::vector<std::vector<BigCount>> binomial_table(long n) {
    std::vector<std::vector<BigCount>> b(n + 1);
    for (long r = 0; r <= n; ++r) {
        b[r].assign(r + 1, 1);
        for (long c = 1; c < r; ++c) b[r][c] = b[r - 1][c - 1] + b[r - 1][c];
    }
    return b;
}

struct BruteSearch {
    const Params& p;
    const ColumnTable& tab;
    const Budget& budget;
    std::vector<std::vector<BigCount>> binom;
    std::vector<std::uint8_t> avail;  // [(col * pairs + q) * g + a]: does any column >= col realize a at pair q
    std::vector<long> counts;         // [q * g + a]
    BigCount total = 0;
    std::uint64_t nodes = 0;

    BruteSearch(const Params& params, const ColumnTable& table, const Budget& bud)
        : p(params), tab(table), budget(bud) {
        binom = binomial_table(p.t);
        const std::uint64_t cells = (tab.columns + 1) * tab.pairs * p.g;
        avail.assign(cells, 0);
        for (std::uint64_t col = tab.columns; col-- > 0;) {
            const std::uint64_t here = col * tab.pairs * p.g;
            const std::uint64_t next = (col + 1) * tab.pairs * p.g;
            for (std::uint64_t q = 0; q < static_cast<std::uint64_t>(tab.pairs) * p.g; ++q)
                avail[here + q] = avail[next + q];
            for (long q = 0; q < tab.pairs; ++q) avail[here + q * p.g + tab.at(col, q)] = 1;
        }
        counts.assign(tab.pairs * p.g, 0);
    }

    void run(std::uint64_t col, long t_rem, const BigCount& ways) {
        if (++nodes > budget.max_search_nodes)
            throw resource_error("count_brute: search node budget exceeded");
        if (t_rem == 0) {
            // every per-pair residue count is capped at lambda and they sum
            // to t per pair, so exhausting t means exact balance
            total += ways;
            return;
        }
        if (col == tab.columns) return;
        // prune: a residue still short of lambda must appear among the
        // remaining columns
        const std::uint8_t* av = &avail[col * tab.pairs * p.g];
        for (long q = 0; q < tab.pairs * p.g; ++q)
            if (counts[q] < p.lambda && !av[q]) return;
        long m_max = t_rem;
        for (long q = 0; q < tab.pairs; ++q)
            m_max = std::min(m_max, p.lambda - counts[q * p.g + tab.at(col, q)]);
        run(col + 1, t_rem, ways);  // multiplicity 0
        for (long m = 1; m <= m_max; ++m) {
            for (long q = 0; q < tab.pairs; ++q) ++counts[q * p.g + tab.at(col, q)];
            run(col + 1, t_rem - m, ways * binom[t_rem][m]);
        }
        for (long q = 0; q < tab.pairs; ++q) counts[q * p.g + tab.at(col, q)] -= m_max;
    }
};

}  // namespace detail

/// Exact count by enumerating multiplicity vectors over the g^{k-1}
/// normalized columns (first row 0): each balanced vector m contributes
/// t!/prod(m_x!) orderings, and the per-column translation action contributes
/// the g^t factor.  The search prunes on per-pair residue counts exceeding
/// lambda and on residues that can no longer be completed.
inline BigCount count_brute(const Params& p, const Budget& budget = {}) {
    const std::uint64_t ncols = column_count(p, true);
    // the recursion walks one frame per normalized column
    if (ncols > budget.max_columns || ncols > 20'000)
        throw resource_error("count_brute: normalized column family too large");
    const std::uint64_t table_cells = (ncols + 1) * pair_count(p.k) * p.g;
    if (table_cells > 200'000'000)
        throw resource_error("count_brute: availability table too large");
    const ColumnTable tab = make_column_table(p, budget, /*normalized=*/true);
    detail::BruteSearch search(p, tab, budget);
    search.run(0, p.t, BigCount(1));
    return search.total * big_pow(p.g, p.t);
}

struct DftResult {
    BigCount count;
    double residual = 0.0;       // distance of the accumulated sum from the integer
    long modulus = 0;            // N = t*g + 1
    std::uint64_t grid_points = 0;
};

/// Exact count through the discrete Fourier transform of the integer walk
/// V = g*X: with N = t*g + 1 (strictly above the coordinate span of a t-step
/// sum) and omega = exp(2*pi*i/N),
///   count = N^{-d} sum_{m in Z_N^d} ( sum_x omega^{m.V(x)} )^t.
/// The float accumulation must land within 0.25 of an integer or an
/// integrity_error is thrown.
inline DftResult count_dft(const Params& p, const Budget& budget = {}) {
    const long N = p.t * p.g + 1;
    const long double work =
        std::pow(static_cast<long double>(N), static_cast<long double>(p.d)) *
        static_cast<long double>(column_count(p));
    if (work > static_cast<long double>(budget.max_dft_work))
        throw resource_error("count_dft: grid work " + std::to_string(static_cast<double>(work)) +
                             " exceeds budget " + std::to_string(budget.max_dft_work));
    const ColumnTable tab = make_column_table(p, budget);

    std::vector<std::complex<double>> omega(N);
    for (long j = 0; j < N; ++j)
        omega[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(N));

    std::uint64_t grid = 1;
    for (long q = 0; q < p.d; ++q) grid *= static_cast<std::uint64_t>(N);

    // one chunk per leading digit; digits advance least-significant-last
    std::vector<std::complex<double>> parts(N);
    parallel_chunks(static_cast<std::uint64_t>(N), [&](std::uint64_t lead) {
        std::vector<long> m(p.d, 0);
        m[0] = static_cast<long>(lead);
        std::uint64_t inner = 1;
        for (long q = 1; q < p.d; ++q) inner *= static_cast<std::uint64_t>(N);
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t step = 0; step < inner; ++step) {
            long msum = 0;
            for (long q = 0; q < p.d; ++q) msum += m[q];
            std::complex<double> col_sum{0.0, 0.0};
            for (std::uint64_t col = 0; col < tab.columns; ++col) {
                long hit = 0;
                const std::uint8_t* diffs = &tab.diff[col * tab.pairs];
                for (long q = 0; q < tab.pairs; ++q) {
                    const int a = diffs[q];
                    if (a != 0) hit += m[q * (p.g - 1) + (a - 1)];
                }
                const long e = ((p.g * hit - msum) % N + N) % N;
                col_sum += omega[e];
            }
            acc += pow_int(col_sum, static_cast<std::uint64_t>(p.t));
            for (long q = p.d - 1; q >= 1; --q) {
                if (++m[q] < N) break;
                m[q] = 0;
            }
        }
        parts[lead] = acc;
    });

    const std::complex<double> sum = pairwise_sum(std::move(parts));
    const double value = sum.real() / static_cast<double>(grid);
    const double imag = sum.imag() / static_cast<double>(grid);
    const double rounded = std::nearbyint(value);
    const double residual = std::max(std::abs(value - rounded), std::abs(imag));
    DftResult out;
    out.residual = residual;
    out.modulus = N;
    out.grid_points = grid;
    if (residual >= 0.25 || rounded < 0.0 || rounded > 9.0e15)
        throw integrity_error("count_dft: rounding residual " + std::to_string(residual) +
                              " too large; fall back to count_brute");
    out.count = BigCount(static_cast<long long>(rounded));
    return out;
}

enum class CountMethod { brute, dft, auto_select };

/// Runs the requested exact counter; auto tries the brute-force route first
/// and falls back to the DFT if the search budget is exceeded.
inline BigCount count_matrices(const Params& p, CountMethod method, const Budget& budget = {},
                               std::string* method_used = nullptr) {
    switch (method) {
        case CountMethod::brute:
            if (method_used) *method_used = "brute";
            return count_brute(p, budget);
        case CountMethod::dft:
            if (method_used) *method_used = "dft";
            return count_dft(p, budget).count;
        case CountMethod::auto_select:
            try {
                const BigCount c = count_brute(p, budget);
                if (method_used) *method_used = "brute";
                return c;
            } catch (const resource_error&) {
                const BigCount c = count_dft(p, budget).count;
                if (method_used) *method_used = "dft";
                return c;
            }
    }
    throw std::domain_error("count_matrices: unknown method");
}

/// P(X_t = 0) = count / g^{k t} as an exact reduced fraction.
inline Rational exact_return_probability(const Params& p, const Budget& budget = {},
                                         CountMethod method = CountMethod::auto_select) {
    const BigCount count = count_matrices(p, method, budget);
    return Rational(count, big_pow(p.g, static_cast<std::uint64_t>(p.k) * p.t));
}

}  // namespace diffmat
