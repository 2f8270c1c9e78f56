#include "unit/generators.hpp"

#include "ultrawave/vladimirov.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <tuple>

using namespace ultrawave;

namespace {

PointKn pt(int p, const PAdicRational& x) { return PointKn{{x}}; }
PointKn pt(int p, long a, long e) { return PointKn{{PAdicRational::from_parts(p, mpz_class(a), e)}}; }

// Brute hypersingular sum: every coset y + p^l O^n of B_R with R beyond the
// support and the target, exact point arithmetic for x - y, and the
// remaining |y| > q^R shells as a geometric series.
complex brute_D(const TestFunction& u, double alpha, const PointKn& x, int extra = 1) {
    const int p = u.prime(), n = u.dim(), l = u.resolution();
    const int R = std::max<int>(u.support(), static_cast<int>(x.norm_exponent().value_or(u.support()))) + extra;
    const double q = p;
    const complex ux = u.evaluate(x);
    const auto cosets = enumerate_cosets(p, n, R, l);
    complex acc{};
    for (const auto& y : cosets) {
        const auto k = y.norm_exponent();
        if (!k) continue;
        acc += std::pow(q, -(*k) * (alpha + n)) * (u.evaluate(x - y) - ux);
    }
    acc *= std::pow(q, -n * l);
    double tail = 0.0;
    for (int k = R + 1; k < R + 400; ++k) tail += std::pow(q, -k * alpha) * (1.0 - std::pow(q, -n));
    acc -= ux * tail;
    return (1.0 - std::pow(q, alpha)) / (1.0 - std::pow(q, -alpha - n)) * acc;
}

std::vector<PointKn> grid_points(const TestFunction& u) {
    std::vector<PointKn> pts;
    for (std::int64_t i = 0; i < u.size(); ++i) pts.push_back(u.grid().point(i));
    return pts;
}

double max_diff(const SampledField& a, const TestFunction& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.evaluate(a.points[i])));
    return worst;
}

}  // namespace

TEST_CASE("kernel sphere integrals") {
    const auto a = kernel_sphere_integral(2, 0, 1.0, 1);
    REQUIRE(a.exact);
    CHECK(*a.exact == mpq_class(1, 2));
    const auto b = kernel_sphere_integral(3, 1, 2.0, 2);
    REQUIRE(b.exact);
    CHECK(*b.exact == mpq_class(8, 81));

    // Brute: count the sphere cosets at several resolutions.
    for (int l = 0; l <= 2; ++l) {
        const CosetGrid grid(3, 2, 1, l);
        const mpq_class measure = mpq_class(static_cast<long>(sphere_indices(grid).size())) * grid.cell_volume();
        CHECK(measure * mpq_class(1, 81) == *b.exact);  // ||y||^{-4} = 3^{-4} on the sphere
    }

    // Non-integer order and the tail series.
    for (auto [p, n, alpha, M] : {std::tuple{2, 1, 0.5, 0}, {3, 2, 1.5, -1}, {5, 3, 2.0, 2}, {2, 2, 1.0, 3}}) {
        double series = 0.0;
        for (int k = M + 1; k < M + 300; ++k) series += kernel_sphere_integral(p, k, alpha, n).value;
        CHECK(kernel_tail_integral(p, M + 1, alpha, n).value == doctest::Approx(series).epsilon(1e-14));
    }
    CHECK_THROWS_AS(kernel_sphere_integral(2, 0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("indicator of the unit ball in the plane") {
    // x = 0, p = 2, alpha = 1: (-8/7) * sum_{k>=1} (-1) 2^{-k} (3/4) = 6/7.
    const auto u = TestFunction::ball_indicator(2, 2, 0, 0, 0);
    const auto v = apply_D_alpha_n(u, 1.0, {origin(2, 2)});
    CHECK(std::abs(v.values[0] - 6.0 / 7.0) <= 1e-15);
    CHECK(std::abs(brute_D(u, 1.0, origin(2, 2), 2) - 6.0 / 7.0) <= 1e-13);
    // The same function on a larger table moves shells from the tail to the near field.
    const auto wide = apply_D_alpha_n(u.refine(2, 1), 1.0, {origin(2, 2)});
    CHECK(std::abs(wide.values[0] - 6.0 / 7.0) <= 1e-14);
}

TEST_CASE("hypersingular sum against the brute oracle") {
    std::uint64_t seed = 1;
    for (auto [p, n, N, l, alpha] : {std::tuple{2, 1, 1, 2, 0.5}, {3, 1, 0, 2, 1.0}, {2, 2, 0, 1, 2.0}, {3, 2, 1, 0, 0.7},
                                     {5, 1, 0, 1, 1.3}, {2, 3, 0, 1, 1.0}}) {
        const auto u = random_test_function(seed++, p, n, N, l, false, false);
        ultrawave::testing::Gen g(seed);
        std::vector<PointKn> targets{origin(p, n)};
        for (int i = 0; i < 6; ++i) targets.push_back(g.ball_point(p, n, N + 1, l + 1));
        const auto v = apply_D_alpha_n(u, alpha, targets);
        for (std::size_t i = 0; i < targets.size(); ++i)
            CHECK(std::abs(v.values[i] - brute_D(u, alpha, targets[i])) <= 1e-11);
    }
}

TEST_CASE("n = 1 reduction is bitwise") {
    const auto u = random_test_function(3, 3, 1, 1, 2, false, false);
    ultrawave::testing::Gen g(3);
    std::vector<PointKn> targets;
    for (int i = 0; i < 50; ++i) targets.push_back(g.ball_point(3, 1, 3, 2));
    for (double alpha : {0.5, 1.0, 2.5}) {
        const auto a = apply_D_alpha(u, alpha, targets);
        const auto b = apply_D_alpha_n(u, alpha, targets);
        CHECK(a.values == b.values);
    }
    CHECK_THROWS_AS(apply_D_alpha(random_test_function(3, 3, 2, 1, 1, false, false), 1.0, {origin(3, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_D_alpha(u, -1.0, targets), std::invalid_argument);
}

TEST_CASE("zero and linearity") {
    const TestFunction zero(2, 2, 1, 1);
    for (const auto& v : apply_D_alpha_n(zero, 1.5, grid_points(zero)).values) CHECK(v == complex{});

    const auto a = random_test_function(5, 2, 2, 1, 1, false, false);
    const auto b = random_test_function(6, 2, 2, 1, 1, false, false);
    const complex s(2.0, -0.5);
    const auto pts = grid_points(a);
    const auto da = apply_D_alpha_n(a, 0.8, pts), db = apply_D_alpha_n(b, 0.8, pts), dab = apply_D_alpha_n(a + s * b, 0.8, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(dab.values[i] - (da.values[i] + s * db.values[i])) <= 1e-12);
}

TEST_CASE("locally constant shells vanish") {
    // u = 1 on B_1, so u(-y) - u(0) = 0 for every |y| <= q.
    const auto u = TestFunction::ball_indicator(3, 1, 1, 2, 2);
    const auto br = hypersingular_breakdown(u, 1.0, origin(3, 1));
    CHECK(br.lowest_shell == -1);
    CHECK(br.outer_radius == 2);
    for (int k = br.lowest_shell; k <= 1; ++k) CHECK(br.shell_sums[static_cast<std::size_t>(k - br.lowest_shell)] == complex{});
    CHECK(br.shell_sums.back() != complex{});
}

TEST_CASE("spectral route agrees with the hypersingular sum") {
    std::uint64_t seed = 20;
    for (auto [p, n, N, l] : {std::tuple{2, 1, 1, 2}, {3, 1, 0, 2}, {2, 2, 0, 1}, {5, 1, 1, 0}, {3, 2, 0, 1}}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const auto u = random_test_function(seed++, p, n, N, l, true, false);
            const auto spec = apply_spectral(u, alpha);
            CHECK(spec.lizorkin_tag(1e-11).in_Phi);
            CHECK(max_diff(apply_D_alpha_n(u, alpha, grid_points(u)), spec) <= 1e-11);
        }
    }
    // 1_O - p 1_{1 + pO}.
    const int p = 3;
    TestFunction u = TestFunction::ball_indicator(p, 1, 0, 0, 1);
    u[1] -= p;
    for (double alpha : {0.5, 1.0, 2.0}) CHECK(max_diff(apply_D_alpha(u, alpha, grid_points(u)), apply_spectral(u, alpha)) <= 1e-11);

    CHECK_THROWS_AS(apply_spectral(TestFunction::ball_indicator(2, 1, 0, 0, 1), 1.0), std::invalid_argument);
}

TEST_CASE("spectral composition") {
    const auto u = random_test_function(31, 2, 2, 1, 1, true, false);
    for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {0.3, 2.2}}) {
        const auto lhs = apply_spectral(apply_spectral(u, a), b);
        CHECK(max_abs_difference(lhs, apply_spectral(u, a + b)) <= 1e-11);
    }
}

TEST_CASE("eigenfunctions") {
    const EigenProfile unit{2, 0, EigenProfile::unit_amplitude(2, 0), 1.0};
    CHECK(std::abs(unit.value(PAdicRational(2)) - 1.0) <= 1e-15);
    CHECK(std::abs(unit.value(PAdicRational(2, mpq_class(1, 2))) + 1.0) <= 1e-15);
    CHECK(unit.value(PAdicRational(2, mpq_class(1, 4))) == complex{});
    CHECK(std::abs(unit.materialize().integrate()) <= 1e-15);

    // Level 0: the profile is fixed by every D^alpha.
    for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
        const EigenProfile e{3, 0, EigenProfile::unit_amplitude(3, 0), alpha};
        const auto u = e.materialize();
        std::vector<PointKn> targets{origin(3, 1)};
        for (int k = -2; k <= 2; ++k) targets.push_back(pt(3, 1, -k));
        const auto v = apply_D_alpha(u, alpha, targets);
        for (std::size_t i = 0; i < targets.size(); ++i) CHECK(std::abs(v.values[i] - u.evaluate(targets[i])) <= 1e-11);
        CHECK(max_diff(v, apply_spectral(u, alpha)) <= 1e-11);
    }

    CHECK(eigen_residual(2, 0, 1.0, -3, 3) <= 1e-11);
    CHECK(eigen_residual(3, -1, 0.5, -2, 4) <= 1e-11);
    CHECK(EigenProfile{3, -1, 1.0, 0.5}.eigenvalue() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(eigen_residual(3, 1, 2.0, -2, 3, complex{}) == 0.0);
    CHECK_THROWS_AS(eigen_residual(2, 0, 1.0, -3, 1), std::invalid_argument);

    for (int p : {2, 3, 5})
        for (int N = -2; N <= 2; ++N)
            for (double alpha : {0.5, 1.0, 2.0}) CHECK(eigen_residual(p, N, alpha, -N - 3, -N + 3) <= 1e-11);
}

TEST_CASE("radial null space") {
    const auto r = radial_nullspace_check(2, 1.0, 0, 3, 3);
    CHECK(r.dimension == 1);
    CHECK(r.profile_error <= 1e-8);
    CHECK(r.null_vector.size() == r.basis_levels.size());

    const auto r2 = radial_nullspace_check(2, 2.0, 0, 3, 3);
    CHECK(r2.dimension == 1);
    CHECK(r2.profile_error <= 1e-8);

    const auto r3 = radial_nullspace_check(3, 0.5, -1, 4, 3);
    CHECK(r3.dimension == 1);
    CHECK(r3.profile_error <= 1e-8);

    // Distinct levels give orthogonal null vectors in L2.
    const auto a = radial_nullspace_check(2, 1.0, 0, 3, 3);
    const auto b = radial_nullspace_check(2, 1.0, 1, 3, 3);
    REQUIRE(a.basis_volumes == b.basis_volumes);
    double inner = 0.0;
    for (std::size_t j = 0; j < a.null_vector.size(); ++j) inner += a.null_vector[j] * b.null_vector[j] * a.basis_volumes[j];
    CHECK(std::abs(inner) <= 1e-8);

    CHECK_THROWS_AS(radial_nullspace_check(2, 1.0, 4, 3, 3), std::domain_error);
    CHECK_THROWS_AS(radial_nullspace_check(2, 1.0, -2, 3, 3), std::domain_error);
}

TEST_CASE("sampled field csv") {
    const auto u = TestFunction::ball_indicator(2, 1, 0, 0, 0);
    std::ostringstream os;
    apply_D_alpha(u, 1.0, {origin(2, 1)}).write_csv(os);
    CHECK(os.str().rfind("point,re,im,operator,alpha\n0*2^0,", 0) == 0);
}
