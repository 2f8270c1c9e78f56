#include "unit/generators.hpp"

#include "ultrawave/local_field.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <array>
#include <set>
#include <tuple>

using namespace ultrawave;
using ultrawave::testing::Gen;

namespace {

std::complex<double> expi(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

}  // namespace

TEST_CASE("absolute value examples") {
    CHECK(PAdicRational(3, 9).abs() == mpq_class(1, 9));
    CHECK(PAdicRational(3, mpq_class(1, 3)).abs() == 3);
    CHECK(PAdicRational(2, 0L).abs() == 0);
    CHECK(PAdicRational(3, 9).exponent() == 2);
    CHECK(PAdicRational(3, 9).unit() == 1);
    CHECK(PAdicRational(5, mpq_class(-50, 7)).abs_exponent() == -2);
}

TEST_CASE("normalisation and textual form") {
    const auto x = PAdicRational::parse(3, "7*3^-2");
    CHECK(x.value() == mpq_class(7, 9));
    CHECK(x.to_string() == "7*3^-2");
    // Non-normalised input is normalised.
    CHECK(PAdicRational::parse(3, "18*3^0").to_string() == "2*3^2");
    CHECK(PAdicRational::parse(2, "0*2^0").is_zero());
    CHECK(PAdicRational(5, mpq_class(3, 7)).to_string() == "3/7*5^0");
    CHECK_THROWS(PAdicRational::parse(3, "7*5^1"));
    CHECK_THROWS(PAdicRational::parse(3, "7"));
    CHECK_THROWS(PAdicRational::parse(3, "x*3^1"));

    Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const int p = std::array{2, 3, 5, 7}[static_cast<std::size_t>(i % 4)];
        const auto y = g.padic_rational(p);
        CHECK(PAdicRational::parse(p, y.to_string()) == y);
        CHECK(PAdicRational::parse(p, y.to_string()).to_string() == y.to_string());
    }
}

TEST_CASE("ultrametric inequality and multiplicativity") {
    Gen g(1);
    for (int i = 0; i < 500; ++i) {
        const int p = std::array{2, 3, 5}[static_cast<std::size_t>(i % 3)];
        const auto x = g.padic_rational(p);
        const auto y = g.padic_rational(p);
        const mpq_class sum = (x + y).abs();
        CHECK(sum <= std::max(x.abs(), y.abs()));
        if (x.abs() != y.abs()) CHECK(sum == std::max(x.abs(), y.abs()));
        CHECK((x * y).abs() == x.abs() * y.abs());
        if (!y.is_zero()) {
            CHECK(((x / y) * y) == x);
            CHECK((x / y).abs() * y.abs() == x.abs());
        }
    }
}

TEST_CASE("canonical character") {
    CHECK(std::abs(PAdicRational(5, mpq_class(2, 5)).character() - expi(2.0 / 5)) < 1e-15);
    CHECK(PAdicRational(2, 7).character() == std::complex<double>(1.0, 0.0));
    // 1/9 + 1 has fractional part 1/9 (reduced by hand).
    CHECK(std::abs(PAdicRational(3, mpq_class(10, 9)).character() - expi(1.0 / 9)) < 1e-15);
    // Rank zero: trivial on O, nontrivial at 1/p.
    for (int p : {2, 3, 5, 7}) {
        CHECK(PAdicRational(p, mpq_class(1, p)).character() != std::complex<double>(1.0, 0.0));
        CHECK(PAdicRational(p, mpq_class(p + 1, 1)).character() == std::complex<double>(1.0, 0.0));
    }
    // Unit denominators: 1/2 in Q_3 is a 3-adic integer, 1/(2*3) has {x} = 1/3 (since 2*2 = 1 mod 3).
    CHECK(PAdicRational(3, mpq_class(1, 2)).character() == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(PAdicRational(3, mpq_class(1, 6)).character() - expi(2.0 / 3)) < 1e-15);
    CHECK(PAdicRational(3, mpq_class(1, 6)).fractional_part() == mpq_class(2, 3));

    Gen g(2);
    for (int i = 0; i < 500; ++i) {
        const int p = std::array{2, 3, 5}[static_cast<std::size_t>(i % 3)];
        const auto x = g.padic_rational(p, -6, 3);
        const auto y = g.padic_rational(p, -6, 3);
        CHECK(std::abs((x + y).character() - x.character() * y.character()) <= 1e-12);
    }
}

TEST_CASE("residues") {
    CHECK(PAdicRational(3, 14).residue(2) == 5);
    // 1/2 = 2 mod 3, = 5 mod 9.
    CHECK(PAdicRational(3, mpq_class(1, 2)).residue(1) == 2);
    CHECK(PAdicRational(3, mpq_class(1, 2)).residue(2) == 5);
    CHECK(PAdicRational(3, mpq_class(-1, 1)).residue(3) == 26);
    CHECK_THROWS(PAdicRational(3, mpq_class(1, 3)).residue(1));
}

TEST_CASE("coset enumeration") {
    const auto a = enumerate_cosets(2, 1, 0, 1);
    REQUIRE(a.size() == 2);
    CHECK(a[0].coords[0].is_zero());
    CHECK(a[1].coords[0].value() == 1);

    const auto b = enumerate_cosets(3, 1, 1, 0);
    REQUIRE(b.size() == 3);
    CHECK(b[0].coords[0].value() == 0);
    CHECK(b[1].coords[0].value() == mpq_class(1, 3));
    CHECK(b[2].coords[0].value() == mpq_class(2, 3));

    const auto c = enumerate_cosets(2, 2, 0, 0);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == origin(2, 2));

    CHECK_THROWS_AS(enumerate_cosets(2, 1, 2, -3), std::invalid_argument);
}

TEST_CASE("coset partition property") {
    Gen g(3);
    for (auto [p, n, N, l] : {std::tuple{2, 1, 1, 2}, {3, 2, 0, 1}, {2, 3, 1, 0}, {5, 1, -1, 2}, {3, 1, 2, -1}}) {
        const CosetGrid grid(p, n, N, l);
        const auto reps = enumerate_cosets(p, n, N, l);
        REQUIRE(static_cast<std::int64_t>(reps.size()) == grid.size());
        const mpq_class radius = PAdicRational::power_of_p(p, l).abs();  // q^{-l}
        for (std::size_t i = 0; i < reps.size(); ++i) {
            CHECK(grid.index_of(reps[i]) == static_cast<std::int64_t>(i));
            for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK((reps[i] - reps[j]).norm() > radius);
        }
        // Membership: every ball point lies in exactly the coset index_of reports.
        for (int t = 0; t < 100; ++t) {
            const PointKn x = g.ball_point(p, n, N);
            const auto idx = grid.index_of(x);
            REQUIRE(idx.has_value());
            CHECK((x - reps[static_cast<std::size_t>(*idx)]).norm() <= radius);
        }
        // Points outside B_N are rejected.
        PointKn far = origin(p, n);
        far.coords[0] = PAdicRational::power_of_p(p, -N - 1);
        CHECK_FALSE(grid.index_of(far).has_value());
        CHECK(grid.cell_volume() * grid.size() == PAdicRational::power_of_p(p, -N * n).abs());
    }
}

TEST_CASE("sphere enumeration") {
    const auto a = enumerate_sphere(2, 1, 0, 1);
    REQUIRE(a.size() == 1);
    CHECK(a[0].coords[0].value() == 1);

    // (d1, d2) in {0,1}^2 with at least one unit digit: three cosets of volume 1/4.
    const auto b = enumerate_sphere(2, 2, 0, 1);
    CHECK(b.size() == 3);
    CHECK(mpq_class(static_cast<long>(b.size())) * CosetGrid(2, 2, 0, 1).cell_volume() == mpq_class(3, 4));

    // Leading digit d_{-2} in {1,2} at resolution l = -1: two cosets of volume 3.
    const auto c = enumerate_sphere(3, 1, 2, -1);
    CHECK(c.size() == 2);
    CHECK(mpq_class(static_cast<long>(c.size())) * CosetGrid(3, 1, 2, -1).cell_volume() == 6);

    CHECK_THROWS_AS(enumerate_sphere(3, 1, 2, -2), std::invalid_argument);

    for (auto [p, n, k, l] : {std::tuple{2, 1, 0, 1}, {2, 2, 1, 1}, {3, 2, -1, 3}, {5, 1, 2, 0}, {2, 3, 0, 2}}) {
        const CosetGrid grid(p, n, k, l);
        const auto idx = sphere_indices(grid);
        const mpq_class measure = mpq_class(static_cast<long>(idx.size())) * grid.cell_volume();
        const mpq_class expected = PAdicRational::power_of_p(p, -n * k).abs() * (1 - PAdicRational::power_of_p(p, n).abs());
        CHECK(measure == expected);
        for (auto i : idx) CHECK(grid.point(i).norm_exponent() == static_cast<long>(k));
    }
}

TEST_CASE("field parameters") {
    CHECK(FieldParams::make(5).q() == 5);
    CHECK_THROWS_AS(FieldParams::make(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldParams::make(1), std::invalid_argument);
}
