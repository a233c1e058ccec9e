#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffmat/lattice.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace diffmat;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

std::set<std::vector<long>> as_grid_set(const Params& p, const std::vector<Theta>& thetas) {
    std::set<std::vector<long>> out;
    for (const Theta& th : thetas) {
        std::vector<long> key(p.d);
        for (long q = 0; q < p.d; ++q) key[q] = std::lround(th[q] * p.g / two_pi);
        out.insert(key);
    }
    return out;
}
}  // namespace

TEST_CASE("building_block worked examples") {
    const Params p2 = make_params(2, 3, 1);
    const Theta a2 = building_block(p2, 1, 2);
    CHECK(a2 == Theta{pi, pi, pi});

    const Params p3 = make_params(3, 3, 1);
    const Theta a3 = building_block(p3, 1, 2);
    // blocks {1,2}: (2pi/3, 4pi/3), {1,3}: (4pi/3, 2pi/3), {2,3}: (2pi/3, 4pi/3)
    CHECK(a3[0] == Approx(2 * pi / 3));
    CHECK(a3[1] == Approx(4 * pi / 3));
    CHECK(a3[2] == Approx(4 * pi / 3));
    CHECK(a3[3] == Approx(2 * pi / 3));
    CHECK(a3[4] == Approx(2 * pi / 3));
    CHECK(a3[5] == Approx(4 * pi / 3));

    CHECK_THROWS_AS(building_block(p3, 1, 3), std::domain_error);  // j = k is out
    CHECK_THROWS_AS(building_block(p3, 2, 2), std::domain_error);
}

TEST_CASE("Z(x) . alpha is the same constant -3 pi (g-1)/g for every column") {
    for (const auto& [g, k] : {std::pair{2, 3}, {3, 3}, {3, 4}, {5, 3}}) {
        const Params p = make_params(g, k, 1);
        for (int i = 1; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const Theta alpha = building_block(p, i, j);
                const double want = -3.0 * pi * (g - 1) / g;
                for_each_column(p, false, Budget{}, [&](std::uint64_t, const Column& x) {
                    const Increment inc = z_map(p, x);
                    double dot = 0.0;
                    for (long q = 0; q < p.d; ++q)
                        dot += alpha[q] * static_cast<double>(inc.v[q]) / g;
                    REQUIRE(circle_dist(dot - want) <= 1e-9);
                });
            }
    }
}

TEST_CASE("expand/decompose: zeros, torus convention, uniqueness round trip") {
    const Params p2 = make_params(2, 3, 1);
    CHECK(expand_lattice(p2, LatticeCoeffs{{0}}) == Theta{0, 0, 0});
    // c = 1 gives (pi,pi,pi), which reduces to (-pi,-pi,-pi)
    const Theta reduced = expand_lattice(p2, LatticeCoeffs{{1}});
    CHECK(reduced == Theta{-pi, -pi, -pi});
    CHECK(decompose_lattice(p2, reduced).c == std::vector<int>{1});

    // all 27 coefficient vectors of (3,4) round-trip
    const Params p34 = make_params(3, 4, 1);
    LatticeCoeffs coeffs;
    coeffs.c.assign(coeff_count(4), 0);
    std::set<std::vector<double>> seen;
    for (int n = 0; n < 27; ++n) {
        const Theta th = expand_lattice(p34, coeffs);
        REQUIRE(decompose_lattice(p34, th).c == coeffs.c);
        seen.insert(th);
        for (long q = coeff_count(4) - 1; q >= 0; --q) {
            if (++coeffs.c[q] < 3) break;
            coeffs.c[q] = 0;
        }
    }
    CHECK(seen.size() == 27);  // distinct frequencies

    CHECK_THROWS_AS(expand_lattice(p34, LatticeCoeffs{{0, 1}}), std::domain_error);
    CHECK_THROWS_AS(expand_lattice(p34, LatticeCoeffs{{0, 1, 3}}), std::domain_error);
    CHECK_THROWS_AS(decompose_lattice(p2, Theta{0.5, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("enumerate_lambda0 census and grid-scan oracle") {
    const Params p23 = make_params(2, 3, 1);
    const auto l23 = enumerate_lambda0(p23);
    REQUIRE(l23.size() == 2);
    CHECK(as_grid_set(p23, l23) ==
          as_grid_set(p23, std::vector<Theta>{{0, 0, 0}, {-pi, -pi, -pi}}));
    CHECK(as_grid_set(p23, l23) == as_grid_set(p23, oracle::lambda0_grid_scan(p23, true)));

    const Params p33 = make_params(3, 3, 1);
    const auto l33 = enumerate_lambda0(p33);
    REQUIRE(l33.size() == 3);
    CHECK(as_grid_set(p33, l33) == as_grid_set(p33, oracle::lambda0_grid_scan(p33, true)));

    // a full 5^12-point scan is minutes of work; size plus per-element
    // membership covers (5,3)
    const Params p53 = make_params(5, 3, 1);
    const auto l53 = enumerate_lambda0(p53);
    REQUIRE(l53.size() == 5);
    for (const Theta& eta : l53) CHECK(lambda_membership(p53, eta));

    CHECK(enumerate_lambda0(make_params(3, 4, 1)).size() == 27);
    CHECK(enumerate_lambda0(make_params(2, 2, 1)).size() == 1);  // k = 2: only 0

    Budget tiny;
    tiny.max_columns = 4;
    CHECK_THROWS_AS(enumerate_lambda0(make_params(3, 4, 1), tiny), resource_error);
}

TEST_CASE("membership: worked cases and 2pi-shift invariance") {
    const Params p = make_params(2, 3, 1);
    CHECK(lambda_membership(p, Theta{0, 0, 0}));
    CHECK(lambda_membership(p, building_block(p, 1, 2)));
    CHECK_FALSE(lambda_membership(p, Theta{pi, 0, 0}));

    const Params p33 = make_params(3, 3, 1);
    for (const Theta& eta : enumerate_lambda0(p33)) {
        CHECK(lambda_membership(p33, eta));
        Theta shifted(eta);
        shifted[2] += two_pi;
        shifted[4] -= 2 * two_pi;
        CHECK(lambda_membership(p33, shifted));
    }
}

TEST_CASE("lambda0 is closed under addition and sits on the 2pi/g grid") {
    for (const auto& [g, k] : {std::pair{2, 4}, {3, 3}, {5, 3}}) {
        const Params p = make_params(g, k, 1);
        const auto lambda0 = enumerate_lambda0(p);
        const ColumnTable tab = make_column_table(p);
        for (const Theta& a : lambda0) {
            for (const double coordinate : a)
                REQUIRE(circle_dist(coordinate * g) <= g * 1e-9);  // multiple of 2pi/g
            for (const Theta& b : lambda0) {
                Theta sum(p.d);
                for (long q = 0; q < p.d; ++q) sum[q] = a[q] + b[q];
                REQUIRE(lambda_membership(p, torus_reduce(sum), 1e-9, tab));
            }
        }
    }
}

TEST_CASE("classify_region: worked cases") {
    const Params p = make_params(2, 3, 1);
    const RegionTag origin = classify_region(p, Theta{0, 0, 0}, 0.01);
    CHECK(origin.region == Region::primary_box);
    CHECK(origin.box_center.c == std::vector<int>{0});

    CHECK(classify_region(p, Theta{pi, 0, 0}, 0.01).region == Region::remainder_a);
    CHECK(classify_region(p, Theta{0.5, 0, 0}, 0.01).region == Region::remainder_b);

    // a point near the nonzero lambda0 element lands in its box
    const RegionTag near = classify_region(p, Theta{-pi + 0.005, -pi, -pi + 0.001}, 0.01);
    CHECK(near.region == Region::primary_box);
    CHECK(near.box_center.c == std::vector<int>{1});

    CHECK_THROWS_AS(classify_region(p, Theta{0, 0, 0}, pi / 2), std::domain_error);
    CHECK_THROWS_AS(classify_region(p, Theta{0, 0, 0}, 0.0), std::domain_error);
}

TEST_CASE("classification is total and the primary fraction matches box volume") {
    const Params p = make_params(2, 3, 1);
    const double delta = 1.0;
    const CounterRng rng(23);
    const std::uint64_t n = 10'000;
    std::uint64_t primary = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        Theta th(p.d);
        for (long q = 0; q < p.d; ++q) th[q] = rng.symmetric(s * p.d + q, pi);
        const RegionTag tag = classify_region(p, th, delta);
        primary += tag.region == Region::primary_box ? 1 : 0;
    }
    // two boxes of volume (2 delta)^3 inside (2 pi)^3
    const double expect = 2.0 * std::pow(delta / pi, 3.0) * n;
    const double sigma = std::sqrt(expect * (1.0 - expect / n));
    CHECK(std::abs(static_cast<double>(primary) - expect) <= 5.0 * sigma);
}

TEST_CASE("phase sum over lambda0: g^C(k-1,2) in the benign parity case, 0 when obstructed") {
    // sum of Phi(eta)^t over the full-modulus frequencies is what multiplies
    // the central box integral in the decomposition of P(X_t = 0)
    for (const auto& [g, k] : {std::pair{2, 3}, {2, 4}, {3, 3}, {3, 4}}) {
        for (long lambda = 1; lambda <= 2; ++lambda) {
            const Params p = make_params(g, k, lambda);
            const ColumnTable tab = make_column_table(p);
            std::complex<double> sum{0.0, 0.0};
            for (const Theta& eta : enumerate_lambda0(p))
                sum += pow_int(phi(p, eta, tab), p.t);
            const double expected =
                (g % 2 == 1 || lambda % 2 == 0)
                    ? static_cast<double>(saturating_pow(g, static_cast<int>(coeff_count(k))))
                    : 0.0;
            REQUIRE(std::abs(sum - expected) <= 1e-9);
        }
    }
}

TEST_CASE("structure_defects: members are flat, single spikes are seen") {
    const Params p34 = make_params(3, 4, 1);
    for (const Theta& eta : enumerate_lambda0(p34)) {
        const StructureDefects d = structure_defects(p34, eta);
        REQUIRE(d.hom_defect <= 1e-9);
        REQUIRE(d.row_defect <= 1e-9);
    }

    const StructureDefects zero = structure_defects(p34, Theta(p34.d, 0.0));
    CHECK(zero.hom_defect == 0.0);
    CHECK(zero.row_defect == 0.0);

    const Params p33 = make_params(3, 3, 1);
    Theta spike(p33.d, 0.0);
    spike[flat_index(p33, {1, 2}, 1)] = 2 * pi / 3;
    CHECK(structure_defects(p33, spike).row_defect >= 2 * pi / 3 - 1e-9);
}
