#pragma once

#include <stdexcept>
#include <string>

namespace diffmat {

// Row pair {i, j}, 1-based with i < j.
struct RowPair {
    int i = 0;
    int j = 0;
    friend bool operator==(const RowPair&, const RowPair&) = default;
};

/// Parameters of a (g, k; lambda)-difference matrix problem over Z_g,
/// together with the derived column count t = lambda*g and the ambient
/// dimension d = C(k,2)*(g-1) of the walk embedding.
struct Params {
    int g = 0;
    int k = 0;
    long lambda = 0;
    long t = 0;
    long d = 0;
    bool drake_flag = false;       // g even, lambda odd, k >= 3: no such matrix exists
    bool jungnickel_flag = false;  // k > lambda*g: existence already ruled out
};

inline long pair_count(int k) { return static_cast<long>(k) * (k - 1) / 2; }

inline Params make_params(int g, int k, long lambda) {
    if (g < 2) throw std::domain_error("make_params: g must be >= 2");
    if (k < 2) throw std::domain_error("make_params: k must be >= 2");
    if (lambda < 1) throw std::domain_error("make_params: lambda must be >= 1");
    Params p;
    p.g = g;
    p.k = k;
    p.lambda = lambda;
    p.t = lambda * static_cast<long>(g);
    p.d = pair_count(k) * (g - 1);
    p.drake_flag = (g % 2 == 0) && (lambda % 2 == 1) && k >= 3;
    p.jungnickel_flag = k > p.t;
    return p;
}

// Rank of {i,j} in the lexicographic pair order (1,2),(1,3),...,(k-1,k).
inline long pair_rank(int k, RowPair pr) {
    return static_cast<long>(pr.i - 1) * (2 * k - pr.i) / 2 + (pr.j - pr.i - 1);
}

struct CoordIndex {
    RowPair pair;
    int a = 0;     // nonzero residue, 1..g-1
    long flat = 0; // 0..d-1
};

/// Flat coordinate of ({i,j}, a).  Coordinates are ordered lexicographically
/// by (pair, a); the residue a = 0 has no coordinate.
inline long flat_index(const Params& p, RowPair pair, int a) {
    if (pair.i < 1 || pair.i >= pair.j || pair.j > p.k)
        throw std::domain_error("flat_index: need 1 <= i < j <= k");
    if (a < 1 || a > p.g - 1)
        throw std::domain_error("flat_index: residue must lie in 1..g-1");
    return pair_rank(p.k, pair) * (p.g - 1) + (a - 1);
}

inline CoordIndex coord_of(const Params& p, long flat) {
    if (flat < 0 || flat >= p.d)
        throw std::domain_error("coord_of: flat index out of range");
    long rank = flat / (p.g - 1);
    const int a = static_cast<int>(flat % (p.g - 1)) + 1;
    int i = 1;
    while (rank >= p.k - i) {
        rank -= p.k - i;
        ++i;
    }
    const RowPair pair{i, i + 1 + static_cast<int>(rank)};
    return CoordIndex{pair, a, flat};
}

}  // namespace diffmat
