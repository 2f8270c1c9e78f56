#pragma once

#include "ultrawave/schwartz.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ultrawave {

/// Pointwise operator output: values at explicit exact points.
struct SampledField {
    std::vector<PointKn> points;
    std::vector<complex> values;
    std::string op;
    double alpha = 0.0;
    std::string source;

    void write_csv(std::ostream& os) const;
};

/// A kernel integral, exact when alpha is an integer.
struct KernelIntegral {
    double value;
    std::optional<mpq_class> exact;
};

/// int_{||y|| = q^k} ||y||^{-alpha-n} d^n y = q^{-k alpha} (1 - q^{-n}).
KernelIntegral kernel_sphere_integral(int p, int k, double alpha, int n);
/// sum_{k >= from} of the sphere integrals, (1 - q^{-n}) q^{-from alpha} / (1 - q^{-alpha}).
KernelIntegral kernel_tail_integral(int p, int from, double alpha, int n);

/// (1 - q^alpha) / (1 - q^{-alpha-n}).
double vladimirov_prefactor(int p, double alpha, int n);

/**
 * Per-shell pieces of the hypersingular sum at one target x.
 *
 * shell_sums[i] is the sum over cosets y + p^l O^n on ||y|| = q^{k}
 * (k = lowest_shell + i) of u(x - y) - u(x); the coset of 0 is never
 * visited since the difference vanishes there.
 */
struct HypersingularBreakdown {
    int lowest_shell = 0;
    int outer_radius = 0;  // M: u(x - y) = 0 for ||y|| > q^M
    std::vector<complex> shell_sums;
    complex near_field;
    complex tail;
    complex value;
};

HypersingularBreakdown hypersingular_breakdown(const TestFunction& u, double alpha, const PointKn& x);

/// (D^{alpha,n} u)(x) for u in D(Q_p^n), by the hypersingular integral with
/// the |y| > q^M part summed in closed form.
SampledField apply_D_alpha_n(const TestFunction& u, double alpha, const std::vector<PointKn>& targets);
/// One-dimensional D^alpha; the n = 1 case of apply_D_alpha_n.
SampledField apply_D_alpha(const TestFunction& u, double alpha, const std::vector<PointKn>& targets);

/// F^{-1}[ ||xi||^alpha F u ] for u in Phi; the result stays in D_N^l.
TestFunction apply_spectral(const TestFunction& u, double alpha);

/// The radial eigenfunction of D^alpha at level N with amplitude c:
/// c q^N (1 - q^{-1}) on |x| <= q^{-N}, -c q^{N-1} on |x| = q^{-N+1}, 0 beyond.
struct EigenProfile {
    int p;
    int level;
    complex amplitude;
    double alpha;

    /// Amplitude giving u(0) = 1.
    static complex unit_amplitude(int p, int level);
    double eigenvalue() const;
    complex value(const PAdicRational& x) const;
    /// Exact table on D_{-N+1}^{N}.
    TestFunction materialize() const;
};

/// max over the window of |D^alpha u - q^{alpha N} u| for the profile with
/// amplitude c (default: u(0) = 1).  Targets are 0, p^{-k} and (p-1) p^{-k}
/// for k in [lowest, highest]; highest must reach -N + 2.
double eigen_residual(int p, int level, double alpha, int lowest, int highest,
                      std::optional<complex> amplitude = std::nullopt);

struct NullspaceReport {
    int dimension = 0;
    double profile_error = 0.0;  // sin of the angle to the level-N profile
    std::vector<double> singular_values;
    std::vector<double> null_vector;     // coefficients on the radial basis
    std::vector<double> basis_volumes;   // Haar measure of each basis set
    std::vector<int> basis_levels;       // -L for the inner ball, then sphere exponents
};

/**
 * Truncated-window analogue of radial uniqueness.
 *
 * Basis: the ball B_{-L} and spheres S_k for -L < k < M; rows sample
 * D^alpha - q^{alpha N} at 0 and at p^{-k}, -L < k <= M + 1.  Throws
 * std::domain_error ("window too small") when the level-N profile is not
 * spanned by the basis.
 */
NullspaceReport radial_nullspace_check(int p, double alpha, int level, int window_M, int window_L);

}  // namespace ultrawave
