#pragma once

#include "ultrawave/radon.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ultrawave {

// ---------------------------------------------------------------- plane waves

/// F(t, x) = f(t + omega . x) with ||omega|| = 1.
struct PlaneWaveSpec {
    TestFunction f;
    PointKn omega;

    int dim() const { return omega.dim(); }
    /// Throws std::invalid_argument unless ||omega|| = 1 and f is one-dimensional.
    void validate() const;
    complex operator()(const PAdicRational& t, const PointKn& x) const;
};

/// Space-time points are stored as (t, x_1, ..., x_n).
PointKn space_time_point(const PAdicRational& t, const PointKn& x);

SampledField plane_wave_eval(const PlaneWaveSpec& spec, const std::vector<PointKn>& space_time_points);

/// int_{||y|| = q^k} g(omega . y) d^n y
///   = q^{(n-1)k} int_{|r| <= q^k} g - q^{(n-1)(k-1)} int_{|r| <= q^{k-1}} g.
complex sphere_pushforward_integral(const TestFunction& g, const PointKn& omega, int k, int n);

/// (D_x^{alpha,n} F)(t, x) by enumerating the cosets of ||y|| <= q^M in
/// K^n, with the shells ||y|| > q^M summed through the pushforward formula.
complex plane_wave_Dx(const PlaneWaveSpec& spec, double alpha, const PAdicRational& t, const PointKn& x);
/// (D_t^alpha F)(t, x) = (D^alpha f)(t + omega . x).
complex plane_wave_Dt(const PlaneWaveSpec& spec, double alpha, const PAdicRational& t, const PointKn& x);

/// max |D_t^alpha F - D_x^{alpha,n} F| over the space-time points.
double wave_residual(const PlaneWaveSpec& spec, double alpha, const std::vector<PointKn>& space_time_points);

// -------------------------------------------------------------- kernels

/**
 * Kernels of the modified Cauchy problem, as functions of the norm
 * exponent (nullopt for the origin):
 *
 *   b(z)      = 1, -1/(q-1), 0                  for ||z|| <= 1, = q, > q
 *   b~(zeta)  = (q-q^n)/(q-1), q/(q-1), 0       for ||zeta|| <= q^{-1}, = 1, > 1
 *   A(x)      = (1-q^{-n+1})/(1-q^{-1}) ||x||^{-1}
 *   B_t(x)    = |t|^{-n} b~(x/t)
 */
struct CauchyKernels {
    int p;
    int n;

    mpq_class b(std::optional<long> k) const;
    mpq_class b_tilde(std::optional<long> k) const;
    mpq_class A_constant() const;
    double A(std::optional<long> k) const;
    /// |t| = q^{t_exponent}.
    mpq_class B(long t_exponent, std::optional<long> k) const;

    /// b on D_1^0 and b~ on D_0^1.
    TestFunction b_table() const;
    TestFunction b_tilde_table() const;
    /// max |fourier(b) - b~| on D_0^1.
    double duality_defect() const;
    /// ||B_t||_{L_1} for |t| = q^{t_exponent}, from the sampled table.
    mpq_class B_l1_norm(long t_exponent) const;
};

/// int_{||u|| = 1} chi(s (u . z)) d^n u where |s| ||z|| = q^k:
/// 1 - q^{-n}, -q^{-n}, 0 for k <= 0, k = 1, k > 1.
mpq_class sphere_character_integral(int p, int n, std::optional<long> k);

// -------------------------------------------------------------- Cauchy problems

/// t-cosets of p^resolution O inside B_support.
struct TimeGrid {
    int support = 0;
    int resolution = 0;

    CosetGrid grid(int p) const { return CosetGrid(p, 1, support, resolution); }
};

/// Values of a solution on (t-coset representative) x (target) cells.
struct SpaceTimeField {
    int p = 2;
    int n = 1;
    TimeGrid time_grid;
    std::vector<PAdicRational> times;  // representatives in CosetGrid order
    std::vector<PointKn> points;
    std::vector<complex> values;  // values[ti * points.size() + xi]
    std::string route;
    std::string source;

    complex at(std::size_t ti, std::size_t xi) const { return values[ti * points.size() + xi]; }
    /// t -> F(t, x_xi) as a table on the time grid.
    TestFunction time_profile(std::size_t xi) const;
    /// max |F(t, x) - F(t', x)| over t-cosets with |t| = |t'|.
    double radial_defect() const;
    /// Columns t_repr, x_repr, re, im, route.
    void write_csv(std::ostream& os) const;
};

enum class CauchyVariant { F1, F2 };

/// F_1 or F_2 through the Radon transform; the sphere resolution
/// is chosen from (phi, time grid, targets).
SpaceTimeField cauchy_radon(const TestFunction& phi, CauchyVariant variant, const TimeGrid& times,
                            const std::vector<PointKn>& points);
/// F_2 from the s-integral of chi(-st) R(s, x), R built from ball integrals of phi.
SpaceTimeField cauchy_direct(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points);
/// F_2 from ||xi||^{1-n} b(t xi) phi~(xi); phi in Phi, n >= 2.
SpaceTimeField cauchy_spectral(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points);
/// F_2 = A * (B_t * phi); phi in Phi, n >= 2.  The coset of t = 0 is
/// evaluated at t = p^{max(l_t, l)}, where F_2 is already constant.
SpaceTimeField cauchy_convolution(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points);

/// F_1(t, .) = B_t * phi on D_{max(N, k)}^l, |t| = q^k; phi itself for t = 0.
TestFunction f1_by_convolution(const TestFunction& phi, std::optional<long> t_exponent);
/// F_2(t, .) on D_N^l from the spectral formula; phi in Phi, n >= 2.
TestFunction f2_by_spectrum(const TestFunction& phi, const TestFunction& spectrum, std::optional<long> t_exponent);

/// max |a - b| over shared cells; throws when the grids differ.
double field_delta(const SpaceTimeField& a, const SpaceTimeField& b);

/// max_x |F(0, x) - phi(x)|.
double initial_condition_residual(const SpaceTimeField& f1, const TestFunction& phi);
/// max_x |(D_t^{n-1} F)(0, x) - phi(x)|; the time grid must contain the
/// t-support of F(., x) (|t| <= max(q^N, ||x||)).
double modified_initial_condition_residual(const SpaceTimeField& f2, const TestFunction& phi);

struct HuygensReport {
    double edge_max = 0.0;            // max |F_2| over |t| > q^{N+1}, ||x|| <= q^N
    int constancy_exponent = 0;       // F_2 constant on t-balls of radius q^{-j}, smallest such j
    double constancy_radius = 0.0;    // q^{-j}
    double outside_support_max = 0.0;  // max |F_2| over ||x|| > q^N, |t| <= q^{-nu}
    int support = 0;
    int nu = 0;
};

HuygensReport huygens_check(const TestFunction& phi, const SpaceTimeField& f2, double tolerance = 1e-10);

// -------------------------------------------------------------- symbol and norms

struct DegeneracyReport {
    int p = 2, n = 1;
    double alpha = 1.0;
    int support = 0, resolution = 0;
    long count = 0;            // coset pairs (tau, xi) with |tau| = ||xi||
    long cells = 0;            // all coset pairs
    mpq_class fraction;        // count / (cells - 1): the pair of 0-cosets is undetermined
    mpq_class closed_form;     // (1 - q^{-1})(1 - q^{-n}) / (1 - q^{-n-1})
    double truncated_measure;  // Haar fraction count / cells
};

/// Zero set of |tau|^alpha - ||xi||^alpha on B_support x B_support^n at the given resolution.
DegeneracyReport symbol_degeneracy(int p, int n, double alpha, int support, int resolution);

struct NormRow {
    PAdicRational t;
    std::optional<long> t_exponent;
    double kappa = 0.0;
    std::optional<double> lambda;     // n kappa / (n - kappa (n - 1)); F_2 row only
    double f1_ratio = 0.0;            // ||F_1(t)||_kappa / ||phi||_kappa
    std::optional<double> f2_ratio;   // ||F_2(t)||_lambda / ||phi||_kappa
    mpq_class b_l1;                   // ||B_t||_{L_1}, exact; 0 for t = 0
};

/**
 * Per t-coset and kappa: the ratios of the L_kappa/L_lambda estimates.
 * The F_2 row needs n >= 2, phi in Phi and 1 < kappa < n/(n-1); for n = 1
 * only the F_1 row is produced.
 */
std::vector<NormRow> norm_report(const TestFunction& phi, const TimeGrid& times, const std::vector<double>& kappas);

}  // namespace ultrawave
