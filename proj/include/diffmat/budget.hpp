#pragma once

#include <cstdint>

namespace diffmat {

// Work limits for the enumeration-heavy operations.  Defaults are sized so
// that the full verification suite finishes in a few minutes on a small
// desktop machine.
struct Budget {
    std::uint64_t max_columns = std::uint64_t{1} << 22;   // full column enumerations (g^k)
    std::uint64_t max_search_nodes = 50'000'000;          // brute-force multiplicity search
    std::uint64_t max_dft_work = 600'000'000;             // DFT grid points x columns
    std::uint64_t max_quad_points = 20'000'000;           // tensor quadrature grid size
};

}  // namespace diffmat
