#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ultrawave {

/// Residue field data for Q_p: q = p, digit set {0, ..., p-1}.
struct FieldParams {
    int p;
    int q() const { return p; }

    /// Throws std::invalid_argument unless p is a prime >= 2.
    static FieldParams make(int p);
};

bool is_prime(long n);

/**
 * Exact element x = u * p^e of Q_p, u a rational whose numerator and
 * denominator are prime to p.
 *
 * Elements that occur on coset grids have integer units (x = a * p^e);
 * general rational units appear only after division.  |x| = q^{-e} is
 * exact.  Zero is stored as u = 0, e = 0.
 */
class PAdicRational {
public:
    explicit PAdicRational(int p = 2);
    PAdicRational(int p, const mpq_class& value);
    PAdicRational(int p, long value) : PAdicRational(p, mpq_class(value)) {}

    /// a * p^e with a arbitrary (normalised on construction).
    static PAdicRational from_parts(int p, const mpz_class& a, long e);
    static PAdicRational power_of_p(int p, long e) { return from_parts(p, 1, e); }

    int prime() const { return p_; }
    bool is_zero() const { return unit_ == 0; }
    const mpq_class& unit() const { return unit_; }
    long exponent() const { return exponent_; }
    mpq_class value() const;

    /// k with |x| = q^k; nullopt for zero.
    std::optional<long> abs_exponent() const;
    /// |x| as an exact rational (0 for zero).
    mpq_class abs() const;
    double abs_double() const;

    /// {x}_p as an exact rational in [0, 1).
    mpq_class fractional_part() const;
    /// Canonical additive character exp(2 pi i {x}_p).
    std::complex<double> character() const;

    /// x mod p^k as an integer in [0, p^k); requires |x| <= 1.
    std::int64_t residue(int k) const;

    PAdicRational operator-() const;
    friend PAdicRational operator+(const PAdicRational& a, const PAdicRational& b);
    friend PAdicRational operator-(const PAdicRational& a, const PAdicRational& b);
    friend PAdicRational operator*(const PAdicRational& a, const PAdicRational& b);
    friend PAdicRational operator/(const PAdicRational& a, const PAdicRational& b);
    friend bool operator==(const PAdicRational& a, const PAdicRational& b);

    /// "a*p^e" (or "a/b*p^e" for a non-integral unit).
    std::string to_string() const;
    static PAdicRational parse(int p, std::string_view text);

private:
    int p_;
    mpq_class unit_;
    long exponent_ = 0;
};

/// A point of K^n with the sup-norm.
struct PointKn {
    std::vector<PAdicRational> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    /// k with ||x|| = q^k; nullopt for the origin.
    std::optional<long> norm_exponent() const;
    mpq_class norm() const;

    friend PointKn operator+(const PointKn& a, const PointKn& b);
    friend PointKn operator-(const PointKn& a, const PointKn& b);
    friend bool operator==(const PointKn& a, const PointKn& b) = default;

    /// Coordinates joined by ';'.
    std::string to_string() const;
    static PointKn parse(int p, std::string_view text);
};

PointKn scale(const PAdicRational& s, const PointKn& x);
PAdicRational dot(const PointKn& a, const PointKn& b);
PointKn origin(int p, int n);

/**
 * Cosets of p^l O^n inside B_N^n, indexed by digit vectors.
 *
 * Coordinate j of a representative is c_j * p^{-N} with
 * c_j in [0, p^{N+l}), i.e. sum_{i=-N}^{l-1} d_i p^i.  The flat index
 * is lexicographic with coordinate 0 most significant.
 */
class CosetGrid {
public:
    CosetGrid(int p, int n, int support, int resolution);

    int prime() const { return p_; }
    int dim() const { return n_; }
    int support() const { return support_; }
    int resolution() const { return resolution_; }
    /// Cosets per coordinate, p^{N+l}.
    std::int64_t side() const { return side_; }
    std::int64_t size() const { return size_; }
    mpq_class cell_volume() const;
    double cell_volume_double() const;

    PAdicRational coordinate(std::int64_t digit) const;
    PointKn point(std::int64_t index) const;
    void digits(std::int64_t index, std::span<std::int64_t> out) const;
    std::int64_t compose(std::span<const std::int64_t> digits) const;

    /// Digit of the coset containing x (nullopt when |x| > q^N).
    std::optional<std::int64_t> coordinate_digit(const PAdicRational& x) const;
    std::optional<std::int64_t> index_of(const PointKn& x) const;

    /// Exponent k with ||x|| = q^k on the coset of `index`; nullopt for the
    /// coset of zero (where the norm is not constant).
    std::optional<int> norm_exponent(std::int64_t index) const;

    friend bool operator==(const CosetGrid&, const CosetGrid&) = default;

private:
    int p_, n_, support_, resolution_;
    std::int64_t side_, size_;
};

/// Maps the coordinate c * p^{-from_support} to its digit on a grid with
/// the given support and resolution (resolution no finer than the source
/// grid's).  nullopt when the coordinate lies outside the target ball.
std::optional<std::int64_t> regrid_digit(std::int64_t digit, int p, int from_support, int to_support,
                                         int to_resolution);

std::vector<PointKn> enumerate_cosets(int p, int n, int support, int resolution);
/// Flat indices (in CosetGrid(p, n, k, l)) of the cosets covering the sphere ||x|| = q^k.
std::vector<std::int64_t> sphere_indices(const CosetGrid& grid);
std::vector<PointKn> enumerate_sphere(int p, int n, int k, int resolution);

}  // namespace ultrawave
