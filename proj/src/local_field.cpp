#include "ultrawave/local_field.hpp"

#include "ultrawave/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ultrawave {

namespace {

// Strips all factors of p from z, returning the count.
long strip_prime(mpz_class& z, int p) {
    if (z == 0) return 0;
    return static_cast<long>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

mpz_class pow_p(int p, unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), k);
    return r;
}

void require_same_prime(const PAdicRational& a, const PAdicRational& b) {
    if (a.prime() != b.prime()) throw std::invalid_argument("mixed primes in p-adic arithmetic");
}

long parse_long(std::string_view s) {
    long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldParams FieldParams::make(int p) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    return FieldParams{p};
}

PAdicRational::PAdicRational(int p) : p_(p), unit_(0) {}

PAdicRational::PAdicRational(int p, const mpq_class& value) : p_(p) {
    if (value == 0) {
        unit_ = 0;
        exponent_ = 0;
        return;
    }
    mpz_class num = value.get_num();
    mpz_class den = value.get_den();
    const long vn = strip_prime(num, p);
    const long vd = strip_prime(den, p);
    unit_ = mpq_class(num, den);
    unit_.canonicalize();
    exponent_ = vn - vd;
}

PAdicRational PAdicRational::from_parts(int p, const mpz_class& a, long e) {
    if (a == 0) return PAdicRational(p);
    mpz_class num = a;
    const long v = strip_prime(num, p);
    PAdicRational r(p);
    r.unit_ = mpq_class(num);
    r.exponent_ = e + v;
    return r;
}

mpq_class PAdicRational::value() const {
    if (is_zero()) return 0;
    mpq_class r = unit_;
    const mpz_class scale = pow_p(p_, static_cast<unsigned long>(std::labs(exponent_)));
    if (exponent_ >= 0)
        r *= scale;
    else
        r /= scale;
    return r;
}

std::optional<long> PAdicRational::abs_exponent() const {
    if (is_zero()) return std::nullopt;
    return -exponent_;
}

mpq_class PAdicRational::abs() const {
    if (is_zero()) return 0;
    const mpz_class scale = pow_p(p_, static_cast<unsigned long>(std::labs(exponent_)));
    return exponent_ >= 0 ? mpq_class(1, scale) : mpq_class(scale);
}

double PAdicRational::abs_double() const {
    if (is_zero()) return 0.0;
    return qpow(p_, static_cast<double>(-exponent_));
}

mpq_class PAdicRational::fractional_part() const {
    if (is_zero() || exponent_ >= 0) return 0;
    const mpz_class modulus = pow_p(p_, static_cast<unsigned long>(-exponent_));
    mpz_class inv;
    const mpz_class den = unit_.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    mpz_class k = unit_.get_num() * inv;
    mpz_mod(k.get_mpz_t(), k.get_mpz_t(), modulus.get_mpz_t());
    mpq_class r(k, modulus);
    r.canonicalize();
    return r;
}

std::complex<double> PAdicRational::character() const {
    const mpq_class phase = fractional_part();
    if (phase == 0) return {1.0, 0.0};
    const mpz_class& num = phase.get_num();
    const mpz_class& den = phase.get_den();
    if (den.fits_slong_p()) return unit_root(num.get_si(), den.get_si());
    // Phases with huge denominators: reduce to [-1/2, 1/2) exactly, then evaluate once.
    mpq_class r = phase;
    if (r >= mpq_class(1, 2)) r -= 1;
    const double angle = 2.0 * 3.14159265358979323846 * r.get_d();
    return {std::cos(angle), std::sin(angle)};
}

std::int64_t PAdicRational::residue(int k) const {
    if (k < 0) throw std::domain_error("residue: negative modulus exponent");
    if (is_zero()) return 0;
    if (exponent_ < 0) throw std::domain_error("residue: |x| > 1");
    const mpz_class modulus = pow_p(p_, static_cast<unsigned long>(k));
    if (exponent_ >= k) return 0;
    mpz_class inv;
    const mpz_class den = unit_.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    mpz_class r = unit_.get_num() * inv * pow_p(p_, static_cast<unsigned long>(exponent_));
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r.get_si();
}

PAdicRational PAdicRational::operator-() const {
    PAdicRational r = *this;
    r.unit_ = -unit_;
    return r;
}

PAdicRational operator+(const PAdicRational& a, const PAdicRational& b) {
    require_same_prime(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return PAdicRational(a.p_, a.value() + b.value());
}

PAdicRational operator-(const PAdicRational& a, const PAdicRational& b) { return a + (-b); }

PAdicRational operator*(const PAdicRational& a, const PAdicRational& b) {
    require_same_prime(a, b);
    if (a.is_zero() || b.is_zero()) return PAdicRational(a.p_);
    PAdicRational r(a.p_);
    r.unit_ = a.unit_ * b.unit_;
    r.exponent_ = a.exponent_ + b.exponent_;
    return r;
}

PAdicRational operator/(const PAdicRational& a, const PAdicRational& b) {
    require_same_prime(a, b);
    if (b.is_zero()) throw std::domain_error("division by zero in Q_p");
    if (a.is_zero()) return PAdicRational(a.p_);
    PAdicRational r(a.p_);
    r.unit_ = a.unit_ / b.unit_;
    r.exponent_ = a.exponent_ - b.exponent_;
    return r;
}

bool operator==(const PAdicRational& a, const PAdicRational& b) {
    return a.p_ == b.p_ && a.unit_ == b.unit_ && a.exponent_ == b.exponent_;
}

std::string PAdicRational::to_string() const {
    std::string s = unit_.get_str();
    s += '*';
    s += std::to_string(p_);
    s += '^';
    s += std::to_string(exponent_);
    return s;
}

PAdicRational PAdicRational::parse(int p, std::string_view text) {
    const auto star = text.find('*');
    const auto caret = text.rfind('^');
    if (star == std::string_view::npos || caret == std::string_view::npos || caret < star)
        throw std::invalid_argument("expected 'a*p^e', got '" + std::string(text) + "'");
    const std::string_view unit_text = text.substr(0, star);
    const long base = parse_long(text.substr(star + 1, caret - star - 1));
    const long e = parse_long(text.substr(caret + 1));
    if (base != p) throw std::invalid_argument("prime mismatch in '" + std::string(text) + "'");
    mpq_class unit;
    if (unit.set_str(std::string(unit_text), 10) != 0 || unit_text.empty())
        throw std::invalid_argument("malformed mantissa in '" + std::string(text) + "'");
    unit.canonicalize();
    PAdicRational u(p, unit);
    if (u.is_zero()) return u;
    u.exponent_ += e;
    return u;
}

std::optional<long> PointKn::norm_exponent() const {
    std::optional<long> best;
    for (const auto& c : coords) {
        const auto k = c.abs_exponent();
        if (k && (!best || *k > *best)) best = k;
    }
    return best;
}

mpq_class PointKn::norm() const {
    mpq_class best = 0;
    for (const auto& c : coords) best = std::max(best, c.abs());
    return best;
}

PointKn operator+(const PointKn& a, const PointKn& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    PointKn r;
    r.coords.reserve(a.coords.size());
    for (std::size_t j = 0; j < a.coords.size(); ++j) r.coords.push_back(a.coords[j] + b.coords[j]);
    return r;
}

PointKn operator-(const PointKn& a, const PointKn& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    PointKn r;
    r.coords.reserve(a.coords.size());
    for (std::size_t j = 0; j < a.coords.size(); ++j) r.coords.push_back(a.coords[j] - b.coords[j]);
    return r;
}

std::string PointKn::to_string() const {
    std::string s;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (j) s += ';';
        s += coords[j].to_string();
    }
    return s;
}

PointKn PointKn::parse(int p, std::string_view text) {
    PointKn x;
    std::size_t start = 0;
    while (true) {
        const auto semi = text.find(';', start);
        x.coords.push_back(PAdicRational::parse(p, text.substr(start, semi - start)));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return x;
}

PointKn scale(const PAdicRational& s, const PointKn& x) {
    PointKn r;
    r.coords.reserve(x.coords.size());
    for (const auto& c : x.coords) r.coords.push_back(s * c);
    return r;
}

PAdicRational dot(const PointKn& a, const PointKn& b) {
    if (a.dim() != b.dim() || a.dim() == 0) throw std::invalid_argument("dimension mismatch");
    PAdicRational s(a.coords[0].prime());
    for (std::size_t j = 0; j < a.coords.size(); ++j) s = s + a.coords[j] * b.coords[j];
    return s;
}

PointKn origin(int p, int n) {
    PointKn r;
    r.coords.assign(static_cast<std::size_t>(n), PAdicRational(p));
    return r;
}

CosetGrid::CosetGrid(int p, int n, int support, int resolution)
    : p_(p), n_(n), support_(support), resolution_(resolution) {
    if (n < 1) throw std::invalid_argument("grid dimension must be >= 1");
    if (support + resolution < 0)
        throw std::invalid_argument("coset grid needs N + l >= 0 (N = " + std::to_string(support) +
                                    ", l = " + std::to_string(resolution) + ")");
    side_ = ipow(p, support + resolution);
    size_ = 1;
    for (int j = 0; j < n; ++j) {
        if (size_ > (std::int64_t{1} << 40) / side_) throw std::overflow_error("coset grid too large");
        size_ *= side_;
    }
}

mpq_class CosetGrid::cell_volume() const {
    const mpz_class scale = pow_p(p_, static_cast<unsigned long>(std::abs(resolution_) * n_));
    return resolution_ >= 0 ? mpq_class(1, scale) : mpq_class(scale);
}

double CosetGrid::cell_volume_double() const { return qpow(p_, -static_cast<double>(n_) * resolution_); }

PAdicRational CosetGrid::coordinate(std::int64_t digit) const {
    return PAdicRational::from_parts(p_, mpz_class(static_cast<long>(digit)), -support_);
}

PointKn CosetGrid::point(std::int64_t index) const {
    std::vector<std::int64_t> d(static_cast<std::size_t>(n_));
    digits(index, d);
    PointKn x;
    x.coords.reserve(d.size());
    for (auto c : d) x.coords.push_back(coordinate(c));
    return x;
}

void CosetGrid::digits(std::int64_t index, std::span<std::int64_t> out) const {
    for (int j = n_ - 1; j >= 0; --j) {
        out[static_cast<std::size_t>(j)] = index % side_;
        index /= side_;
    }
}

std::int64_t CosetGrid::compose(std::span<const std::int64_t> digits) const {
    std::int64_t index = 0;
    for (int j = 0; j < n_; ++j) index = index * side_ + digits[static_cast<std::size_t>(j)];
    return index;
}

std::optional<std::int64_t> CosetGrid::coordinate_digit(const PAdicRational& x) const {
    if (x.is_zero()) return 0;
    if (*x.abs_exponent() > support_) return std::nullopt;
    const PAdicRational shifted = x * PAdicRational::power_of_p(p_, support_);
    return shifted.residue(support_ + resolution_);
}

std::optional<std::int64_t> CosetGrid::index_of(const PointKn& x) const {
    if (x.dim() != n_) throw std::invalid_argument("point dimension does not match grid");
    std::int64_t index = 0;
    for (const auto& c : x.coords) {
        const auto d = coordinate_digit(c);
        if (!d) return std::nullopt;
        index = index * side_ + *d;
    }
    return index;
}

std::optional<int> CosetGrid::norm_exponent(std::int64_t index) const {
    std::optional<int> best;
    for (int j = 0; j < n_; ++j) {
        const std::int64_t c = index % side_;
        index /= side_;
        if (c == 0) continue;
        const int k = support_ - valuation_of(c, p_);
        if (!best || k > *best) best = k;
    }
    return best;
}

std::optional<std::int64_t> regrid_digit(std::int64_t digit, int p, int from_support, int to_support,
                                         int to_resolution) {
    const std::int64_t modulus = ipow(p, to_support + to_resolution);
    if (from_support > to_support) {
        const std::int64_t step = ipow(p, from_support - to_support);
        if (digit % step != 0) return std::nullopt;
        return (digit / step) % modulus;
    }
    const int shift = to_support - from_support;
    // digit * p^shift mod modulus, without overflow for large shifts.
    if (shift >= to_support + to_resolution) return 0;
    return (digit % modulus) * ipow(p, shift) % modulus;
}

std::vector<PointKn> enumerate_cosets(int p, int n, int support, int resolution) {
    const CosetGrid grid(p, n, support, resolution);
    std::vector<PointKn> out;
    out.reserve(static_cast<std::size_t>(grid.size()));
    for (std::int64_t i = 0; i < grid.size(); ++i) out.push_back(grid.point(i));
    return out;
}

std::vector<std::int64_t> sphere_indices(const CosetGrid& grid) {
    if (grid.resolution() < -grid.support() + 1)
        throw std::invalid_argument("sphere ||x|| = q^k is a union of p^l-cosets only for l >= -k + 1");
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.norm_exponent(i);
        if (k && *k == grid.support()) out.push_back(i);
    }
    return out;
}

std::vector<PointKn> enumerate_sphere(int p, int n, int k, int resolution) {
    const CosetGrid grid(p, n, k, resolution);
    std::vector<PointKn> out;
    for (auto i : sphere_indices(grid)) out.push_back(grid.point(i));
    return out;
}

}  // namespace ultrawave
