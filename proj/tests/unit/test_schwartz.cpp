#include "unit/generators.hpp"

#include "ultrawave/schwartz.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

using namespace ultrawave;
using ultrawave::testing::Gen;

namespace {

PointKn pt(int p, const mpq_class& v) { return PointKn{{PAdicRational(p, v)}}; }

}  // namespace

TEST_CASE("evaluate") {
    const auto one = TestFunction::ball_indicator(2, 1, 0, 0, 0);
    CHECK(one.evaluate(pt(2, mpq_class(1, 2))) == complex{});
    CHECK(one.evaluate(pt(2, 6)) == complex(1.0));
    CHECK(one.evaluate(pt(2, mpq_class(5, 3))) == complex(1.0));

    // Local constancy: x and x + p^l y land in the same coset.
    const auto f = random_test_function(7, 3, 2, 1, 2, false, false);
    Gen g(7);
    for (int i = 0; i < 50; ++i) {
        const PointKn x = g.ball_point(3, 2, 1);
        PointKn y = g.ball_point(3, 2, 0);
        for (auto& c : y.coords) c = c * PAdicRational::power_of_p(3, 2);
        CHECK(f.evaluate(x) == f.evaluate(x + y));
    }
}

TEST_CASE("integrate") {
    for (int n = 1; n <= 3; ++n) CHECK(TestFunction::ball_indicator(2, n, 0, 0, 0).integrate() == complex(1.0));
    CHECK(TestFunction::ball_indicator(2, 1, 1, 1, 0).integrate() == complex(2.0));
    CHECK(TestFunction::ball_indicator(3, 2, -1, 0, 2).integrate() == complex(1.0 / 9));

    // chi(x/3) on O at resolution 1: (1 + w + w^2)/3 with w = exp(2 pi i/3).
    TestFunction f(3, 1, 0, 1);
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const PAdicRational x = f.grid().point(i).coords[0];
        f[i] = (x / PAdicRational(3, 3)).character();
    }
    CHECK(std::abs(f.integrate()) <= 1e-15);

    // Linearity and the L1 bound.
    const auto a = random_test_function(3, 2, 1, 1, 2, false, false);
    const auto b = random_test_function(4, 2, 1, 1, 2, false, false);
    const complex s(0.25, -1.5);
    CHECK(std::abs((a + s * b).integrate() - (a.integrate() + s * b.integrate())) <= 1e-14);
    CHECK(std::abs(a.integrate()) <= a.lkappa_norm(1.0) + 1e-15);
}

TEST_CASE("refine") {
    const auto one = TestFunction::ball_indicator(2, 1, 0, 0, 0);
    const auto fine = one.refine(1, 1);
    REQUIRE(fine.size() == 4);
    // Digits c in [0, 4) represent c/2: 0 and 1 lie in O, 1/2 and 3/2 do not.
    CHECK(fine[0] == complex(1.0));
    CHECK(fine[1] == complex{});
    CHECK(fine[2] == complex(1.0));
    CHECK(fine[3] == complex{});
    CHECK(fine.integrate() == complex(1.0));

    const auto f = random_test_function(5, 3, 2, 0, 1, true, false);
    CHECK(max_abs_difference(f.refine(0, 1), f) == 0.0);
    const auto r = f.refine(2, 2);
    Gen g(5);
    for (int i = 0; i < 100; ++i) {
        const PointKn x = g.ball_point(3, 2, 2);
        CHECK(r.evaluate(x) == f.evaluate(x));
    }
    CHECK(std::abs(r.integrate() - f.integrate()) <= 1e-14);
    CHECK(r.lizorkin_tag() == f.lizorkin_tag());
    CHECK_THROWS_AS(f.refine(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS(f.refine(0, 0), std::invalid_argument);
}

TEST_CASE("random test functions") {
    const auto a = random_test_function(1, 2, 1, 1, 2, true, false);
    const auto b = random_test_function(1, 2, 1, 1, 2, true, false);
    CHECK(a.values() == b.values());
    CHECK(std::abs(a.integrate()) <= 1e-14);
    CHECK(a.lizorkin_tag().in_Phi);

    const auto c = random_test_function(1, 3, 1, 0, 2, false, true);
    CHECK(c.evaluate(origin(3, 1)) == complex{});
    CHECK(c.lizorkin_tag().in_Psi);

    const auto both = random_test_function(9, 2, 2, 1, 1, true, true);
    CHECK(both.lizorkin_tag() == LizorkinTag{true, true});

    CHECK_THROWS_AS(random_test_function(1, 2, 1, 0, 0, true, false), std::invalid_argument);
    CHECK_THROWS_AS(random_test_function(1, 2, 1, 0, 0, false, true), std::invalid_argument);
}

TEST_CASE("lkappa norm") {
    const auto one = TestFunction::ball_indicator(3, 2, 0, 0, 0);
    for (double k : {1.0, 1.5, 2.0, 7.0}) CHECK(one.lkappa_norm(k) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(TestFunction::ball_indicator(2, 1, 1, 1, 0).lkappa_norm(2.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
    CHECK_THROWS(one.lkappa_norm(0.5));
}

TEST_CASE("partition of unity") {
    for (auto [p, n, N, l] : {std::tuple{2, 2, 1, 1}, {3, 1, 0, 2}, {2, 1, -1, 3}}) {
        const CosetGrid grid(p, n, N, l);
        TestFunction sum(p, n, N, l);
        for (std::int64_t i = 0; i < grid.size(); ++i) {
            TestFunction e(p, n, N, l);
            e[i] = 1.0;
            sum += e;
        }
        CHECK(max_abs_difference(sum, TestFunction::ball_indicator(p, n, N, N, l)) == 0.0);
    }
}

TEST_CASE("Lizorkin tags") {
    const auto phi = random_test_function(2, 5, 1, 0, 1, true, false);
    CHECK(phi.lizorkin_tag().in_Phi);
    CHECK(phi.refine(2, 3).lizorkin_tag() == phi.lizorkin_tag());
    const auto psi = random_test_function(2, 5, 1, 0, 1, false, true);
    CHECK(psi.refine(1, 2).lizorkin_tag() == psi.lizorkin_tag());
    CHECK_FALSE(TestFunction::ball_indicator(2, 1, 0, 0, 0).lizorkin_tag().in_Phi);
    CHECK_FALSE(TestFunction::ball_indicator(2, 1, 0, 0, 0).lizorkin_tag().in_Psi);
}

TEST_CASE("serialization") {
    const auto f = random_test_function(11, 3, 2, 0, 1, true, false);
    const auto j = f.to_json();
    CHECK(j.at("p") == 3);
    CHECK(j.at("n") == 2);
    CHECK(j.at("N") == 0);
    CHECK(j.at("l") == 1);
    const auto back = TestFunction::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.values() == f.values());

    std::ostringstream os;
    TestFunction::ball_indicator(2, 1, -1, 0, 1).write_csv(os);
    CHECK(os.str() == "coset_repr,re,im\n0*2^0,1,0\n1*2^0,0,0\n");
}
