#include "ultrawave/waves.hpp"

#include "ultrawave/fourier.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace ultrawave {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

mpq_class q_power(int q, long e) { return PAdicRational::power_of_p(q, -e).abs(); }

void require_positive_order(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("order alpha must be > 0");
}

void require_Phi(const TestFunction& phi, const char* who) {
    if (std::abs(phi.integrate()) > 1e-10)
        throw std::invalid_argument(std::string(who) + " needs a zero-mean (Phi) initial function");
}

void require_dim_at_least_two(const TestFunction& phi, const char* who) {
    if (phi.dim() < 2) throw std::invalid_argument(std::string(who) + " needs n >= 2");
}

// Level of each digit on a grid of the given support: support - v_p(c), INT_MIN for 0.
std::vector<int> digit_levels(std::int64_t side, int p, int support) {
    std::vector<int> level(static_cast<std::size_t>(side), INT_MIN);
    for (std::int64_t c = 1; c < side; ++c) level[static_cast<std::size_t>(c)] = support - valuation_of(c, p);
    return level;
}

std::optional<long> max_exponent(std::optional<long> a, std::optional<long> b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

// int_{|r| <= q^k} g for a one-dimensional table.
complex ball_integral_1d(const TestFunction& g, int k) {
    if (k >= g.support()) return g.integrate();
    if (k < -g.resolution()) return g[0] * qpow(g.prime(), k);
    CompensatedSum acc;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const auto e = g.grid().norm_exponent(i);
        if (!e || *e <= k) acc.add(g[i]);
    }
    return acc.value() * g.grid().cell_volume_double();
}

/*
 * Integrals of phi over the balls ||y - x|| <= q^j.  For -l <= j < N they
 * are sums over the cosets of p^{-j} O^n in B_N, tabulated once per level.
 */
class BallSums {
public:
    explicit BallSums(const TestFunction& phi) : phi_(phi), total_(phi.integrate()) {
        const int p = phi.prime(), n = phi.dim(), N = phi.support(), l = phi.resolution();
        std::vector<std::int64_t> fine(static_cast<std::size_t>(n)), coarse(static_cast<std::size_t>(n));
        for (int j = -l; j < N; ++j) {
            const CosetGrid grid(p, n, N, -j);
            std::vector<CompensatedSum> sums(static_cast<std::size_t>(grid.size()));
            for (std::int64_t i = 0; i < phi.size(); ++i) {
                if (phi[i] == complex{}) continue;
                phi.grid().digits(i, fine);
                for (int c = 0; c < n; ++c)
                    coarse[static_cast<std::size_t>(c)] = *regrid_digit(fine[static_cast<std::size_t>(c)], p, N, N, -j);
                sums[static_cast<std::size_t>(grid.compose(coarse))].add(phi[i]);
            }
            std::vector<complex> level;
            level.reserve(sums.size());
            for (const auto& s : sums) level.push_back(s.value() * phi.grid().cell_volume_double());
            levels_.push_back(std::move(level));
        }
    }

    complex total() const { return total_; }

    /// Ball about the coset with digits `digits` on a grid (support, l), l = phi's resolution.
    complex ball(std::span<const std::int64_t> digits, int support, std::optional<int> norm_exponent, int j) const {
        const int p = phi_.prime(), N = phi_.support(), l = phi_.resolution();
        if (j >= N) return (!norm_exponent || *norm_exponent <= j) ? total_ : complex{};
        if (norm_exponent && *norm_exponent > N) return {};
        std::vector<std::int64_t> d(digits.size());
        if (j < -l) {
            for (std::size_t c = 0; c < d.size(); ++c) d[c] = *regrid_digit(digits[c], p, support, N, l);
            return phi_[phi_.grid().compose(d)] * qpow(p, static_cast<double>(phi_.dim()) * j);
        }
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = *regrid_digit(digits[c], p, support, N, -j);
        return levels_[static_cast<std::size_t>(j + l)][static_cast<std::size_t>(CosetGrid(p, phi_.dim(), N, -j).compose(d))];
    }

    complex ball(const PointKn& x, int j) const {
        const int support = std::max<int>(phi_.support(), static_cast<int>(x.norm_exponent().value_or(phi_.support())));
        const CosetGrid grid(phi_.prime(), phi_.dim(), support, phi_.resolution());
        const std::int64_t index = *grid.index_of(x);
        std::vector<std::int64_t> digits(static_cast<std::size_t>(phi_.dim()));
        grid.digits(index, digits);
        return ball(digits, support, grid.norm_exponent(index), j);
    }

private:
    const TestFunction& phi_;
    complex total_;
    std::vector<std::vector<complex>> levels_;  // j = -l .. N-1
};

SpaceTimeField empty_field(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points,
                           std::string route) {
    SpaceTimeField f;
    f.p = phi.prime();
    f.n = phi.dim();
    f.time_grid = times;
    const CosetGrid grid = times.grid(phi.prime());
    for (std::int64_t i = 0; i < grid.size(); ++i) f.times.push_back(grid.coordinate(i));
    for (const auto& x : points)
        if (x.dim() != phi.dim()) throw std::invalid_argument("target dimension does not match the initial function");
    f.points = points;
    f.values.assign(f.times.size() * points.size(), complex{});
    f.route = std::move(route);
    return f;
}

}  // namespace

// ---------------------------------------------------------------- plane waves

void PlaneWaveSpec::validate() const {
    if (f.dim() != 1) throw std::invalid_argument("plane-wave profile must be a function of one variable");
    if (omega.dim() < 1 || omega.norm_exponent() != 0L) throw std::invalid_argument("plane-wave direction needs ||omega|| = 1");
    for (const auto& c : omega.coords)
        if (c.prime() != f.prime()) throw std::invalid_argument("direction and profile use different primes");
}

complex PlaneWaveSpec::operator()(const PAdicRational& t, const PointKn& x) const {
    return f.evaluate(PointKn{{t + dot(omega, x)}});
}

PointKn space_time_point(const PAdicRational& t, const PointKn& x) {
    PointKn tx{{t}};
    tx.coords.insert(tx.coords.end(), x.coords.begin(), x.coords.end());
    return tx;
}

namespace {

std::pair<PAdicRational, PointKn> split_space_time(const PointKn& tx, int n) {
    if (tx.dim() != n + 1) throw std::invalid_argument("space-time point must have n + 1 coordinates");
    return {tx.coords[0], PointKn{{tx.coords.begin() + 1, tx.coords.end()}}};
}

}  // namespace

SampledField plane_wave_eval(const PlaneWaveSpec& spec, const std::vector<PointKn>& space_time_points) {
    spec.validate();
    SampledField out;
    out.points = space_time_points;
    out.op = "plane_wave";
    for (const auto& tx : space_time_points) {
        const auto [t, x] = split_space_time(tx, spec.dim());
        out.values.push_back(spec(t, x));
    }
    return out;
}

complex sphere_pushforward_integral(const TestFunction& g, const PointKn& omega, int k, int n) {
    if (g.dim() != 1) throw std::invalid_argument("pushforward needs a function of one variable");
    if (omega.dim() != n || omega.norm_exponent() != 0L) throw std::invalid_argument("pushforward needs ||omega|| = 1");
    const int p = g.prime();
    return qpow(p, static_cast<double>(n - 1) * k) * ball_integral_1d(g, k) -
           qpow(p, static_cast<double>(n - 1) * (k - 1)) * ball_integral_1d(g, k - 1);
}

complex plane_wave_Dt(const PlaneWaveSpec& spec, double alpha, const PAdicRational& t, const PointKn& x) {
    spec.validate();
    return apply_D_alpha(spec.f, alpha, {PointKn{{t + dot(spec.omega, x)}}}).values.front();
}

complex plane_wave_Dx(const PlaneWaveSpec& spec, double alpha, const PAdicRational& t, const PointKn& x) {
    spec.validate();
    require_positive_order(alpha);
    const TestFunction& f = spec.f;
    const int p = f.prime(), n = spec.dim(), Nf = f.support(), l = f.resolution();
    const double q = p;
    const PAdicRational s = t + dot(spec.omega, x);
    const int M = std::max<int>(Nf, static_cast<int>(s.abs_exponent().value_or(Nf)));

    const CosetGrid line(p, 1, M, l);
    const std::int64_t side = line.side();
    const std::int64_t sigma = *line.coordinate_digit(s);
    std::vector<std::int64_t> w;
    for (const auto& c : spec.omega.coords) w.push_back(c.is_zero() ? 0 : c.residue(M + l));

    // f at the digit of s - r on the line grid.
    std::vector<complex> shifted(static_cast<std::size_t>(side));
    for (std::int64_t c = 0; c < side; ++c) {
        const auto d = regrid_digit(mod_floor(sigma - c, side), p, M, Nf, l);
        shifted[static_cast<std::size_t>(c)] = d ? f[*d] : complex{};
    }
    const complex fs = shifted[0];

    // Near field: every coset y + p^l O^n of B_M in K^n.
    const std::vector<int> level = digit_levels(side, p, M);
    std::vector<CompensatedSum> shells(static_cast<std::size_t>(M + l));
    std::vector<std::int64_t> digit(static_cast<std::size_t>(n), 0);
    const std::int64_t total = CosetGrid(p, n, M, l).size();
    for (std::int64_t i = 1; i < total; ++i) {
        for (int j = n - 1; j >= 0; --j) {
            auto& d = digit[static_cast<std::size_t>(j)];
            if (++d < side) break;
            d = 0;
        }
        int k = INT_MIN;
        std::int64_t r = 0;
        for (int j = 0; j < n; ++j) {
            const std::int64_t d = digit[static_cast<std::size_t>(j)];
            k = std::max(k, level[static_cast<std::size_t>(d)]);
            r = (r + (w[static_cast<std::size_t>(j)] % side) * d) % side;
        }
        shells[static_cast<std::size_t>(k + l - 1)].add(shifted[static_cast<std::size_t>(r)] - fs);
    }
    const double pref = (1.0 - std::pow(q, alpha)) / (1.0 - std::pow(q, -alpha - n));
    CompensatedSum near;
    for (int k = -l + 1; k <= M; ++k)
        near.add(std::pow(q, -k * (alpha + n) - static_cast<double>(n) * l) * shells[static_cast<std::size_t>(k + l - 1)].value());

    // Far field: for k > M the pushforward over ||y|| = q^k is q^{(n-1)(k-M-1)} times the one at M + 1.
    const TestFunction g(p, 1, M, l, shifted);
    const complex push = sphere_pushforward_integral(g, spec.omega, M + 1, n);
    const complex far = push * std::pow(q, -(M + 1) * (alpha + n)) / (1.0 - std::pow(q, -(alpha + 1))) -
                        fs * (1.0 - std::pow(q, -n)) * std::pow(q, -(M + 1) * alpha) / (1.0 - std::pow(q, -alpha));
    return pref * (near.value() + far);
}

double wave_residual(const PlaneWaveSpec& spec, double alpha, const std::vector<PointKn>& space_time_points) {
    spec.validate();
    require_positive_order(alpha);
    std::vector<double> diff(space_time_points.size());
    parallel_for(static_cast<std::int64_t>(diff.size()), [&](std::int64_t i) {
        const auto [t, x] = split_space_time(space_time_points[static_cast<std::size_t>(i)], spec.dim());
        diff[static_cast<std::size_t>(i)] = std::abs(plane_wave_Dt(spec, alpha, t, x) - plane_wave_Dx(spec, alpha, t, x));
    });
    return diff.empty() ? 0.0 : *std::max_element(diff.begin(), diff.end());
}

// -------------------------------------------------------------- kernels

mpq_class CauchyKernels::b(std::optional<long> k) const {
    if (!k || *k <= 0) return 1;
    if (*k == 1) return mpq_class(-1, p - 1);
    return 0;
}

mpq_class CauchyKernels::b_tilde(std::optional<long> k) const {
    if (!k || *k <= -1) return (mpq_class(p) - q_power(p, n)) / (p - 1);
    if (*k == 0) return mpq_class(p, p - 1);
    return 0;
}

mpq_class CauchyKernels::A_constant() const { return (1 - q_power(p, 1 - n)) / (1 - q_power(p, -1)); }

double CauchyKernels::A(std::optional<long> k) const {
    if (!k) throw std::domain_error("A is singular at the origin");
    return mpq_class(A_constant() * q_power(p, -*k)).get_d();
}

mpq_class CauchyKernels::B(long t_exponent, std::optional<long> k) const {
    return q_power(p, -n * t_exponent) * b_tilde(k ? std::optional<long>(*k - t_exponent) : std::nullopt);
}

TestFunction CauchyKernels::b_table() const {
    TestFunction f(p, n, 1, 0);
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = b(f.grid().norm_exponent(i)).get_d();
    return f;
}

TestFunction CauchyKernels::b_tilde_table() const {
    TestFunction f(p, n, 0, 1);
    for (std::int64_t i = 0; i < f.size(); ++i) f[i] = b_tilde(f.grid().norm_exponent(i)).get_d();
    return f;
}

double CauchyKernels::duality_defect() const { return max_abs_difference(fourier(b_table()), b_tilde_table()); }

mpq_class CauchyKernels::B_l1_norm(long t_exponent) const {
    const CosetGrid grid(p, n, static_cast<int>(t_exponent), static_cast<int>(1 - t_exponent));
    mpq_class sum = 0;
    for (std::int64_t i = 0; i < grid.size(); ++i) sum += abs(B(t_exponent, grid.norm_exponent(i)));
    return sum * grid.cell_volume();
}

mpq_class sphere_character_integral(int p, int n, std::optional<long> k) {
    if (!k || *k <= 0) return 1 - q_power(p, -n);
    if (*k == 1) return -q_power(p, -n);
    return 0;
}

// -------------------------------------------------------------- fields

TestFunction SpaceTimeField::time_profile(std::size_t xi) const {
    TestFunction f(p, 1, time_grid.support, time_grid.resolution);
    for (std::size_t ti = 0; ti < times.size(); ++ti) f[static_cast<std::int64_t>(ti)] = at(ti, xi);
    return f;
}

double SpaceTimeField::radial_defect() const {
    const CosetGrid grid = time_grid.grid(p);
    std::map<int, std::size_t> first;
    double worst = 0.0;
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const auto k = grid.norm_exponent(static_cast<std::int64_t>(ti));
        if (!k) continue;
        const auto [it, fresh] = first.emplace(*k, ti);
        if (fresh) continue;
        for (std::size_t xi = 0; xi < points.size(); ++xi) worst = std::max(worst, std::abs(at(ti, xi) - at(it->second, xi)));
    }
    return worst;
}

void SpaceTimeField::write_csv(std::ostream& os) const {
    os << "t_repr,x_repr,re,im,route\n";
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const std::string t = times[ti].to_string();
        for (std::size_t xi = 0; xi < points.size(); ++xi) {
            const complex v = at(ti, xi);
            os << t << ',' << points[xi].to_string() << ',' << format_double(v.real()) << ',' << format_double(v.imag())
               << ',' << route << '\n';
        }
    }
}

// -------------------------------------------------------------- Cauchy routes

SpaceTimeField cauchy_radon(const TestFunction& phi, CauchyVariant variant, const TimeGrid& times,
                            const std::vector<PointKn>& points) {
    SpaceTimeField field = empty_field(phi, times, points, variant == CauchyVariant::F1 ? "radon-F1" : "radon-F2");
    std::optional<long> k;
    for (const auto& t : field.times) k = max_exponent(k, t.abs_exponent());
    for (const auto& x : points) k = max_exponent(k, x.norm_exponent());
    const int m = backprojection_resolution(phi.support(), phi.resolution(), k);
    const RadonTable table = radon_forward(phi, m);
    const int order = variant == CauchyVariant::F1 ? phi.dim() - 1 : 0;
    field.values = radon_backproject(table, field.times, points, order);
    return field;
}

SpaceTimeField cauchy_direct(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points) {
    SpaceTimeField field = empty_field(phi, times, points, "direct");
    const int p = phi.prime(), n = phi.dim(), N = phi.support(), l = phi.resolution();
    const BallSums balls(phi);
    const complex I = balls.total();
    const CosetGrid tgrid = times.grid(p);
    const double qn = qpow(p, -n);

    parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t xi) {
        const PointKn& x = points[static_cast<std::size_t>(xi)];
        const int K0 = std::max<int>(N, static_cast<int>(x.norm_exponent().value_or(N)));
        // R on |s| = q^k for -K0 < k <= l; constant (1 - q^{-n}) I below, zero above.
        std::vector<complex> R;
        for (int k = -K0 + 1; k <= l; ++k) R.push_back(balls.ball(x, -k) - qn * balls.ball(x, 1 - k));
        for (std::size_t ti = 0; ti < field.times.size(); ++ti) {
            const auto tau = tgrid.norm_exponent(static_cast<std::int64_t>(ti));
            CompensatedSum acc;
            if (!tau || *tau <= K0) acc.add((1.0 - qn) * I * qpow(p, -K0));
            for (int k = -K0 + 1; k <= l; ++k) {
                double shell = 0.0;
                if (!tau || *tau <= -k)
                    shell = qpow(p, k) * (1.0 - 1.0 / p);
                else if (*tau == 1 - k)
                    shell = -qpow(p, k - 1);
                if (shell != 0.0) acc.add(shell * R[static_cast<std::size_t>(k + K0 - 1)]);
            }
            field.values[ti * points.size() + static_cast<std::size_t>(xi)] = acc.value() / (1.0 - 1.0 / p);
        }
    });
    return field;
}

TestFunction f2_by_spectrum(const TestFunction& phi, const TestFunction& spectrum, std::optional<long> t_exponent) {
    require_dim_at_least_two(phi, "the spectral route");
    const CauchyKernels kernels{phi.prime(), phi.dim()};
    TestFunction F = spectrum;
    for (std::int64_t i = 0; i < F.size(); ++i) {
        const auto k = F.grid().norm_exponent(i);
        if (!k) {
            F[i] = 0.0;
            continue;
        }
        const double bt = t_exponent ? kernels.b(*t_exponent + *k).get_d() : 1.0;
        F[i] *= qpow(phi.prime(), static_cast<double>(1 - phi.dim()) * *k) * bt;
    }
    return inverse_fourier(F);
}

SpaceTimeField cauchy_spectral(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points) {
    require_dim_at_least_two(phi, "the spectral route");
    require_Phi(phi, "the spectral route");
    SpaceTimeField field = empty_field(phi, times, points, "spectral");
    const TestFunction spectrum = fourier(phi);
    std::vector<std::optional<std::int64_t>> where;
    for (const auto& x : points) where.push_back(phi.grid().index_of(x));
    const CosetGrid tgrid = times.grid(phi.prime());
    parallel_for(static_cast<std::int64_t>(field.times.size()), [&](std::int64_t ti) {
        const TestFunction F = f2_by_spectrum(phi, spectrum, tgrid.norm_exponent(ti));
        for (std::size_t xi = 0; xi < points.size(); ++xi)
            field.values[static_cast<std::size_t>(ti) * points.size() + xi] = where[xi] ? F[*where[xi]] : complex{};
    });
    return field;
}

TestFunction f1_by_convolution(const TestFunction& phi, std::optional<long> t_exponent) {
    if (!t_exponent) return phi;
    const int p = phi.prime(), n = phi.dim(), N = phi.support(), l = phi.resolution();
    const int tau = static_cast<int>(*t_exponent);
    const CauchyKernels kernels{p, n};
    const double inner = kernels.B(tau, tau - 1).get_d();  // ||z|| <= q^{tau-1}
    const double rim = kernels.B(tau, tau).get_d();        // ||z|| = q^tau
    const BallSums balls(phi);
    TestFunction g(p, n, std::max(N, tau), l);
    parallel_for(g.size(), [&](std::int64_t i) {
        std::vector<std::int64_t> digits(static_cast<std::size_t>(n));
        g.grid().digits(i, digits);
        const auto k = g.grid().norm_exponent(i);
        const complex small = balls.ball(digits, g.support(), k, tau - 1);
        const complex large = balls.ball(digits, g.support(), k, tau);
        g[i] = inner * small + rim * (large - small);
    });
    return g;
}

SpaceTimeField cauchy_convolution(const TestFunction& phi, const TimeGrid& times, const std::vector<PointKn>& points) {
    require_dim_at_least_two(phi, "the convolution route");
    require_Phi(phi, "the convolution route");
    SpaceTimeField field = empty_field(phi, times, points, "convolution");
    const int p = phi.prime(), n = phi.dim(), l = phi.resolution();
    const CauchyKernels kernels{p, n};
    const double CA = kernels.A_constant().get_d();
    // int_{||y|| <= q^{-l}} A(y) dy.
    const double self = CA * (1.0 - qpow(p, -n)) * qpow(p, -static_cast<double>(l) * (n - 1)) / (1.0 - qpow(p, 1 - n));
    const double volume = qpow(p, -static_cast<double>(n) * l);
    const CosetGrid tgrid = times.grid(p);

    for (std::size_t ti = 0; ti < field.times.size(); ++ti) {
        const auto tau = tgrid.norm_exponent(static_cast<std::int64_t>(ti));
        const long tk = tau ? *tau : -std::max(times.resolution, l);
        const TestFunction g = f1_by_convolution(phi, tk);
        const int S = g.support();
        parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t xi) {
            const PointKn& x = points[static_cast<std::size_t>(xi)];
            const int M = std::max<int>(S, static_cast<int>(x.norm_exponent().value_or(S)));
            const CosetGrid grid(p, n, M, l);
            const std::int64_t side = grid.side();
            std::vector<std::int64_t> xd(static_cast<std::size_t>(n));
            grid.digits(*grid.index_of(x), xd);
            // Per coordinate: digit of y -> digit of x - y on g's grid (-1 outside B_S).
            std::vector<std::vector<std::int64_t>> to_g(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(side)));
            for (int j = 0; j < n; ++j)
                for (std::int64_t c = 0; c < side; ++c) {
                    const auto d = regrid_digit(mod_floor(xd[static_cast<std::size_t>(j)] - c, side), p, M, S, l);
                    to_g[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = d ? *d : -1;
                }
            const std::vector<int> level = digit_levels(side, p, M);
            std::vector<std::int64_t> gstride(static_cast<std::size_t>(n));
            for (std::int64_t s = 1, j = n - 1; j >= 0; --j) {
                gstride[static_cast<std::size_t>(j)] = s;
                s *= g.grid().side();
            }
            CompensatedSum acc;
            std::vector<std::int64_t> digit(static_cast<std::size_t>(n), 0);
            for (std::int64_t i = 0; i < grid.size(); ++i) {
                if (i > 0)
                    for (int j = n - 1; j >= 0; --j) {
                        auto& d = digit[static_cast<std::size_t>(j)];
                        if (++d < side) break;
                        d = 0;
                    }
                int k = INT_MIN;
                std::int64_t gi = 0;
                bool inside = true;
                for (int j = 0; j < n; ++j) {
                    const std::int64_t c = digit[static_cast<std::size_t>(j)];
                    k = std::max(k, level[static_cast<std::size_t>(c)]);
                    const std::int64_t d = to_g[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
                    if (d < 0)
                        inside = false;
                    else
                        gi += d * gstride[static_cast<std::size_t>(j)];
                }
                if (!inside || g[gi] == complex{}) continue;
                const double weight = k == INT_MIN ? self : CA * qpow(p, -k) * volume;
                acc.add(weight * g[gi]);
            }
            field.values[ti * points.size() + static_cast<std::size_t>(xi)] = acc.value();
        });
    }
    return field;
}

double field_delta(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (a.p != b.p || a.n != b.n || a.time_grid.support != b.time_grid.support ||
        a.time_grid.resolution != b.time_grid.resolution || !(a.points == b.points))
        throw std::invalid_argument("comparing fields on different grids");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    return worst;
}

double initial_condition_residual(const SpaceTimeField& f1, const TestFunction& phi) {
    double worst = 0.0;
    for (std::size_t xi = 0; xi < f1.points.size(); ++xi)
        worst = std::max(worst, std::abs(f1.at(0, xi) - phi.evaluate(f1.points[xi])));
    return worst;
}

double modified_initial_condition_residual(const SpaceTimeField& f2, const TestFunction& phi) {
    if (f2.time_grid.resolution < phi.resolution())
        throw std::invalid_argument("time grid is coarser than the constancy radius of the initial function");
    const int order = f2.n - 1;
    double worst = 0.0;
    for (std::size_t xi = 0; xi < f2.points.size(); ++xi) {
        const PointKn& x = f2.points[xi];
        const long reach = std::max<long>(phi.support(), x.norm_exponent().value_or(phi.support()));
        if (f2.time_grid.support < reach)
            throw std::invalid_argument("time grid does not contain the t-support at x = " + x.to_string());
        const TestFunction profile = f2.time_profile(xi);
        const complex v = order == 0 ? profile[0] : apply_D_alpha(profile, order, {origin(f2.p, 1)}).values.front();
        worst = std::max(worst, std::abs(v - phi.evaluate(x)));
    }
    return worst;
}

HuygensReport huygens_check(const TestFunction& phi, const SpaceTimeField& f2, double tolerance) {
    HuygensReport report;
    report.support = phi.support();
    report.nu = phi.resolution();
    const int p = f2.p;
    const CosetGrid tgrid = f2.time_grid.grid(p);
    const int St = f2.time_grid.support, lt = f2.time_grid.resolution;

    for (std::size_t ti = 0; ti < f2.times.size(); ++ti) {
        const auto tau = tgrid.norm_exponent(static_cast<std::int64_t>(ti));
        for (std::size_t xi = 0; xi < f2.points.size(); ++xi) {
            const auto xk = f2.points[xi].norm_exponent();
            const bool inside = !xk || *xk <= report.support;
            if (inside && tau && *tau > report.support + 1) report.edge_max = std::max(report.edge_max, std::abs(f2.at(ti, xi)));
            const bool near_zero = tau ? *tau <= -report.nu : lt >= report.nu;
            if (!inside && near_zero) report.outside_support_max = std::max(report.outside_support_max, std::abs(f2.at(ti, xi)));
        }
    }

    // Smallest j such that F_2 is constant on every t-ball of radius q^{-j}.
    report.constancy_exponent = lt;
    for (int j = -St; j <= lt; ++j) {
        bool constant = true;
        std::map<std::int64_t, std::size_t> leader;
        for (std::size_t ti = 0; ti < f2.times.size() && constant; ++ti) {
            const auto key = *regrid_digit(static_cast<std::int64_t>(ti), p, St, St, j);
            const auto [it, fresh] = leader.emplace(key, ti);
            if (fresh) continue;
            for (std::size_t xi = 0; xi < f2.points.size(); ++xi)
                if (std::abs(f2.at(ti, xi) - f2.at(it->second, xi)) > tolerance) {
                    constant = false;
                    break;
                }
        }
        if (constant) {
            report.constancy_exponent = j;
            break;
        }
    }
    report.constancy_radius = qpow(p, -report.constancy_exponent);
    return report;
}

// -------------------------------------------------------------- symbol and norms

DegeneracyReport symbol_degeneracy(int p, int n, double alpha, int support, int resolution) {
    require_positive_order(alpha);
    DegeneracyReport r;
    r.p = p;
    r.n = n;
    r.alpha = alpha;
    r.support = support;
    r.resolution = resolution;
    const CosetGrid tau(p, 1, support, resolution), xi(p, n, support, resolution);
    std::map<int, long> tau_levels, xi_levels;
    for (std::int64_t i = 0; i < tau.size(); ++i)
        if (const auto k = tau.norm_exponent(i)) ++tau_levels[*k];
    for (std::int64_t i = 0; i < xi.size(); ++i)
        if (const auto k = xi.norm_exponent(i)) ++xi_levels[*k];
    // |tau|^alpha = ||xi||^alpha exactly when the exponents agree (alpha > 0).
    for (const auto& [k, c] : tau_levels)
        if (const auto it = xi_levels.find(k); it != xi_levels.end()) r.count += c * it->second;
    r.cells = tau.size() * xi.size();
    r.fraction = mpq_class(r.count) / mpq_class(r.cells - 1);
    r.fraction.canonicalize();
    r.closed_form = (1 - q_power(p, -1)) * (1 - q_power(p, -n)) / (1 - q_power(p, -n - 1));
    r.truncated_measure = static_cast<double>(r.count) / static_cast<double>(r.cells);
    return r;
}

std::vector<NormRow> norm_report(const TestFunction& phi, const TimeGrid& times, const std::vector<double>& kappas) {
    const int p = phi.prime(), n = phi.dim();
    const bool f2_rows = n >= 2 && std::abs(phi.integrate()) <= 1e-10;
    for (double kappa : kappas) {
        if (!(kappa > 1.0)) throw std::invalid_argument("norm report needs kappa > 1");
        if (f2_rows && !(kappa < static_cast<double>(n) / (n - 1)))
            throw std::invalid_argument("the F_2 estimate needs 1 < kappa < n/(n-1)");
    }
    const CauchyKernels kernels{p, n};
    const TestFunction spectrum = fourier(phi);
    const CosetGrid tgrid = times.grid(p);
    std::vector<NormRow> rows;
    for (std::int64_t ti = 0; ti < tgrid.size(); ++ti) {
        const auto tau = tgrid.norm_exponent(ti);
        const TestFunction F1 = f1_by_convolution(phi, tau ? std::optional<long>(*tau) : std::nullopt);
        std::optional<TestFunction> F2;
        if (f2_rows) F2 = f2_by_spectrum(phi, spectrum, tau ? std::optional<long>(*tau) : std::nullopt);
        for (double kappa : kappas) {
            NormRow row;
            row.t = tgrid.coordinate(ti);
            if (tau) row.t_exponent = *tau;
            row.kappa = kappa;
            const double base = phi.lkappa_norm(kappa);
            row.f1_ratio = F1.lkappa_norm(kappa) / base;
            if (F2) {
                row.lambda = n * kappa / (n - kappa * (n - 1));
                row.f2_ratio = F2->lkappa_norm(*row.lambda) / base;
            }
            row.b_l1 = tau ? kernels.B_l1_norm(*tau) : mpq_class(0);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace ultrawave
