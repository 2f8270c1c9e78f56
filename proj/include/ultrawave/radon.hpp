#pragma once

#include "ultrawave/vladimirov.hpp"

#include <iosfwd>
#include <vector>

namespace ultrawave {

/**
 * Radon transform of phi in D_N^l(Q_p^n) restricted to the unit sphere,
 *
 *     phi^(eta, r) = int chi(-s r) phi~(s eta) ds,   ||eta|| = 1.
 *
 * For ||eta|| = 1 the map s -> phi~(s eta) lies in D_l^N, so every slice
 * r -> phi^(eta, r) lies in D_N^l and depends on eta only through
 * eta mod p^{N+l}.  Directions are the cosets eta + p^m O^n of the unit
 * sphere; m >= N + l makes the table jointly constant in (eta, r).
 */
class RadonTable {
public:
    int prime() const { return p_; }
    int dim() const { return n_; }
    int sphere_resolution() const { return m_; }
    int slice_support() const { return support_; }
    int slice_resolution() const { return resolution_; }
    /// Extra levels stored beyond |r| <= q^N.
    int margin() const { return margin_; }

    const std::vector<PointKn>& directions() const { return directions_; }
    const TestFunction& slice(std::size_t direction) const { return slices_[slice_of_[direction]]; }
    /// Slice of the direction coset containing the unit vector eta.
    const TestFunction& slice_at(const PointKn& eta) const;
    /// Haar measure of one direction coset, q^{-nm}.
    double direction_volume() const;

    complex value(const PointKn& eta, const PAdicRational& r) const { return slice_at(eta).evaluate(PointKn{{r}}); }

    RadonTable& operator+=(const RadonTable& other);
    RadonTable& operator*=(complex s);

    /// {n, p, m, N_s, l_s, margin}.
    nlohmann::json header() const;
    /// Columns eta_repr, s_repr, re, im.
    void write_csv(std::ostream& os) const;

    friend RadonTable radon_forward(const TestFunction& phi, int sphere_resolution, int margin);

private:
    int p_ = 2, n_ = 1, m_ = 1, support_ = 0, resolution_ = 0, margin_ = 0;
    std::vector<PointKn> directions_;
    std::vector<std::int64_t> grid_index_;  // flat index in CosetGrid(p, n, 0, m), ascending
    std::vector<std::size_t> slice_of_;
    std::vector<TestFunction> slices_;
};

/// Smallest admissible sphere resolution for phi in D_N^l: max(1, N + l).
int minimal_sphere_resolution(int support, int resolution);
/// Sphere resolution at which the back-projection at shift r (|r| = q^k) is exact: l + max(N, k).
int backprojection_resolution(int support, int resolution, std::optional<long> shift_exponent);

/// Throws std::invalid_argument when sphere_resolution < max(1, N + l).
RadonTable radon_forward(const TestFunction& phi, int sphere_resolution, int margin = 1);

/// phi^(xi, r) for any xi != 0, by a direct character sum over s.
complex radon_point(const TestFunction& phi, const PointKn& xi, const PAdicRational& r);

/**
 * (1 - q^{-1})^{-1} int_{||eta|| = 1} (D^order phi^(eta, .))(t + eta . x) d^n eta
 *
 * order 0 means no derivative.  Throws std::domain_error naming the point
 * when the table's sphere resolution is too coarse for (t, x).
 */
complex radon_backproject(const RadonTable& table, const PAdicRational& t, const PointKn& x, int order);

/// The same integral on every (t, x) pair; result is t-major,
/// values[i * points.size() + j] for (times[i], points[j]).
std::vector<complex> radon_backproject(const RadonTable& table, const std::vector<PAdicRational>& times,
                                       const std::vector<PointKn>& points, int order);

/// Inversion: order n - 1 at t = 0 (order 0 when n = 1).
SampledField radon_inverse(const RadonTable& table, const std::vector<PointKn>& targets);

/// max |phi^(eta, s)| over the stored |s| > q^N.
double radon_vanishing_check(const RadonTable& table);

}  // namespace ultrawave
