#pragma once

#include "ultrawave/local_field.hpp"
#include "ultrawave/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ultrawave {

/// Membership in the Lizorkin spaces: Phi (zero mean), Psi (vanishes near 0).
struct LizorkinTag {
    bool in_Phi = false;
    bool in_Psi = false;
    friend bool operator==(const LizorkinTag&, const LizorkinTag&) = default;
};

/**
 * An element of D_N^l(Q_p^n): zero outside B_N^n, constant on the cosets
 * of p^l O^n.  Values are stored densely in CosetGrid order.
 */
class TestFunction {
public:
    TestFunction(int p, int n, int support, int resolution);
    TestFunction(int p, int n, int support, int resolution, std::vector<complex> values);

    /// Indicator of the ball B_radius^n sampled on the grid (support, resolution).
    static TestFunction ball_indicator(int p, int n, int radius, int support, int resolution);

    int prime() const { return grid_.prime(); }
    int dim() const { return grid_.dim(); }
    int support() const { return grid_.support(); }
    int resolution() const { return grid_.resolution(); }
    const CosetGrid& grid() const { return grid_; }
    std::int64_t size() const { return grid_.size(); }

    const std::vector<complex>& values() const { return values_; }
    std::vector<complex>& values() { return values_; }
    complex operator[](std::int64_t index) const { return values_[static_cast<std::size_t>(index)]; }
    complex& operator[](std::int64_t index) { return values_[static_cast<std::size_t>(index)]; }

    complex evaluate(const PointKn& x) const;
    /// Haar integral: sum of values times q^{-nl}, compensated.
    complex integrate() const;
    /// Same function on the finer table D_{N'}^{l'}; requires N' >= N, l' >= l.
    TestFunction refine(int support, int resolution) const;
    /// (sum q^{-nl} |v|^kappa)^{1/kappa}, kappa >= 1.
    double lkappa_norm(double kappa) const;
    LizorkinTag lizorkin_tag(double tolerance = 1e-12) const;

    TestFunction& operator+=(const TestFunction& other);
    TestFunction& operator*=(complex s);
    friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }
    friend TestFunction operator*(complex s, TestFunction a) { return a *= s; }

    nlohmann::json to_json() const;
    static TestFunction from_json(const nlohmann::json& j);
    void write_csv(std::ostream& os) const;

private:
    CosetGrid grid_;
    std::vector<complex> values_;
};

/// Largest modulus difference between two tables on the same grid.
double max_abs_difference(const TestFunction& a, const TestFunction& b);

/**
 * Deterministic pseudo-random element of D_N^l.
 *
 * Values are dyadic rationals k/16 (|k| <= 16 before projection).  The
 * Phi projection removes the mean in integer arithmetic, spreading the
 * remainder one unit at a time, so the table sums to exactly zero.  The
 * Psi projection zeroes the coset of 0.
 */
TestFunction random_test_function(std::uint64_t seed, int p, int n, int support, int resolution,
                                  bool project_Phi, bool project_Psi);

/// Radial function on Q_p^n: value_by_level(k) on ||x|| = q^k for
/// k > -l, centre_value on B_{-l}; sampled on D_N^l and zero beyond B_N.
template <typename F>
TestFunction radial_function(int p, int n, int support, int resolution, complex centre_value, F&& value_by_level) {
    TestFunction f(p, n, support, resolution);
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const auto k = f.grid().norm_exponent(i);
        f[i] = k ? complex(value_by_level(*k)) : centre_value;
    }
    return f;
}

}  // namespace ultrawave
