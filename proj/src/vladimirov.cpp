#include "ultrawave/vladimirov.hpp"

#include "ultrawave/fourier.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace ultrawave {

namespace {

bool is_small_integer(double a) { return a == std::floor(a) && std::abs(a) <= 64.0; }

// q^e as an exact rational.
mpq_class q_power(int q, long e) { return PAdicRational::power_of_p(q, -e).abs(); }

void require_positive_order(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("order alpha must be > 0");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Exact (integer alpha) or floating (1 - q^alpha) / (1 - q^{-alpha-n}).
KernelIntegral prefactor_value(int p, double alpha, int n) {
    if (is_small_integer(alpha)) {
        const long a = static_cast<long>(alpha);
        const mpq_class r = (1 - q_power(p, a)) / (1 - q_power(p, -a - n));
        return {r.get_d(), r};
    }
    return {(1.0 - std::pow(p, alpha)) / (1.0 - std::pow(p, -alpha - n)), std::nullopt};
}

// Per-shell weights prefactor * q^{-k(alpha+n)} * q^{-n l} for k in [lowest, highest],
// and prefactor * (tail integral from highest + 1).
struct ShellWeights {
    std::vector<double> shell;
    double tail;
};

ShellWeights shell_weights(int p, double alpha, int n, int resolution, int lowest, int highest) {
    ShellWeights w;
    const KernelIntegral pref = prefactor_value(p, alpha, n);
    const KernelIntegral tail = kernel_tail_integral(p, highest + 1, alpha, n);
    if (pref.exact) {
        const long a = static_cast<long>(alpha);
        for (int k = lowest; k <= highest; ++k)
            w.shell.push_back(mpq_class(*pref.exact * q_power(p, -static_cast<long>(k) * (a + n) - static_cast<long>(n) * resolution)).get_d());
        w.tail = mpq_class(*pref.exact * *tail.exact).get_d();
    } else {
        for (int k = lowest; k <= highest; ++k)
            w.shell.push_back(pref.value * std::pow(static_cast<double>(p), -k * (alpha + n) - static_cast<double>(n) * resolution));
        w.tail = pref.value * tail.value;
    }
    return w;
}

}  // namespace

void SampledField::write_csv(std::ostream& os) const {
    os << "point,re,im,operator,alpha\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        os << points[i].to_string() << ',' << format_double(values[i].real()) << ',' << format_double(values[i].imag())
           << ',' << op << ',' << format_double(alpha) << '\n';
}

KernelIntegral kernel_sphere_integral(int p, int k, double alpha, int n) {
    require_positive_order(alpha);
    if (is_small_integer(alpha)) {
        const mpq_class r = q_power(p, -static_cast<long>(k) * static_cast<long>(alpha)) * (1 - q_power(p, -n));
        return {r.get_d(), r};
    }
    return {std::pow(static_cast<double>(p), -k * alpha) * (1.0 - qpow(p, -n)), std::nullopt};
}

KernelIntegral kernel_tail_integral(int p, int from, double alpha, int n) {
    require_positive_order(alpha);
    if (is_small_integer(alpha)) {
        const long a = static_cast<long>(alpha);
        const mpq_class r = (1 - q_power(p, -n)) * q_power(p, -static_cast<long>(from) * a) / (1 - q_power(p, -a));
        return {r.get_d(), r};
    }
    return {(1.0 - qpow(p, -n)) * std::pow(static_cast<double>(p), -from * alpha) / (1.0 - std::pow(p, -alpha)),
            std::nullopt};
}

double vladimirov_prefactor(int p, double alpha, int n) { return prefactor_value(p, alpha, n).value; }

HypersingularBreakdown hypersingular_breakdown(const TestFunction& u, double alpha, const PointKn& x) {
    require_positive_order(alpha);
    const int n = u.dim();
    const int p = u.prime();
    const int N = u.support();
    const int l = u.resolution();
    if (x.dim() != n) throw std::invalid_argument("target dimension does not match the function");

    HypersingularBreakdown out;
    const int M = std::max<int>(N, static_cast<int>(x.norm_exponent().value_or(N)));
    out.outer_radius = M;
    out.lowest_shell = -l + 1;
    const CosetGrid shells(p, n, M, l);
    const std::int64_t side = shells.side();
    const complex ux = u.evaluate(x);

    // Per coordinate: digit of y -> digit of x - y on u's grid (-1 outside B_N).
    std::vector<std::vector<std::int64_t>> to_u(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(side)));
    for (int j = 0; j < n; ++j) {
        const std::int64_t cx = *shells.coordinate_digit(x.coords[static_cast<std::size_t>(j)]);
        for (std::int64_t c = 0; c < side; ++c) {
            const auto d = regrid_digit(mod_floor(cx - c, side), p, M, N, l);
            to_u[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = d ? *d : -1;
        }
    }
    std::vector<int> level(static_cast<std::size_t>(side), INT_MIN);
    for (std::int64_t c = 1; c < side; ++c) level[static_cast<std::size_t>(c)] = M - valuation_of(c, p);

    const int shell_count = M + l;  // shells -l+1 .. M
    std::vector<CompensatedSum> sums(static_cast<std::size_t>(std::max(shell_count, 0)));
    std::vector<std::int64_t> ustride(static_cast<std::size_t>(n));
    {
        std::int64_t s = 1;
        for (int j = n - 1; j >= 0; --j) {
            ustride[static_cast<std::size_t>(j)] = s;
            s *= u.grid().side();
        }
    }

    std::vector<std::int64_t> digit(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 1; i < shells.size(); ++i) {
        for (int j = n - 1; j >= 0; --j) {
            auto& d = digit[static_cast<std::size_t>(j)];
            if (++d < side) break;
            d = 0;
        }
        int k = INT_MIN;
        std::int64_t uidx = 0;
        bool inside = true;
        for (int j = 0; j < n; ++j) {
            const std::int64_t c = digit[static_cast<std::size_t>(j)];
            k = std::max(k, level[static_cast<std::size_t>(c)]);
            const std::int64_t ud = to_u[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
            if (ud < 0)
                inside = false;
            else
                uidx += ud * ustride[static_cast<std::size_t>(j)];
        }
        const complex diff = (inside ? u[uidx] : complex{}) - ux;
        sums[static_cast<std::size_t>(k - out.lowest_shell)].add(diff);
    }

    const ShellWeights w = shell_weights(p, alpha, n, l, out.lowest_shell, M);
    CompensatedSum near;
    out.shell_sums.reserve(sums.size());
    for (std::size_t s = 0; s < sums.size(); ++s) {
        out.shell_sums.push_back(sums[s].value());
        near.add(w.shell[s] * out.shell_sums.back());
    }
    out.near_field = near.value();
    out.tail = -ux * w.tail;
    out.value = out.near_field + out.tail;
    return out;
}

SampledField apply_D_alpha_n(const TestFunction& u, double alpha, const std::vector<PointKn>& targets) {
    require_positive_order(alpha);
    SampledField out;
    out.points = targets;
    out.values.resize(targets.size());
    out.op = u.dim() == 1 ? "D^alpha" : "D^{alpha,n}";
    out.alpha = alpha;
    parallel_for(static_cast<std::int64_t>(targets.size()), [&](std::int64_t i) {
        out.values[static_cast<std::size_t>(i)] = hypersingular_breakdown(u, alpha, targets[static_cast<std::size_t>(i)]).value;
    });
    return out;
}

SampledField apply_D_alpha(const TestFunction& u, double alpha, const std::vector<PointKn>& targets) {
    if (u.dim() != 1) throw std::invalid_argument("apply_D_alpha expects a function of one variable");
    return apply_D_alpha_n(u, alpha, targets);
}

TestFunction apply_spectral(const TestFunction& u, double alpha) {
    require_positive_order(alpha);
    const complex mean = u.integrate();
    if (std::abs(mean) > 1e-10)
        throw std::invalid_argument("apply_spectral needs a zero-mean (Phi) input; integral = " +
                                    std::to_string(std::abs(mean)));
    TestFunction spectrum = fourier(u);
    for (std::int64_t i = 0; i < spectrum.size(); ++i) {
        const auto k = spectrum.grid().norm_exponent(i);
        spectrum[i] = k ? spectrum[i] * std::pow(static_cast<double>(u.prime()), *k * alpha) : complex{};
    }
    return inverse_fourier(spectrum);
}

complex EigenProfile::unit_amplitude(int p, int level) { return qpow(p, -level) / (1.0 - 1.0 / p); }

double EigenProfile::eigenvalue() const { return std::pow(static_cast<double>(p), alpha * level); }

complex EigenProfile::value(const PAdicRational& x) const {
    const auto k = x.abs_exponent();
    if (!k || *k <= -level) return amplitude * qpow(p, level) * (1.0 - 1.0 / p);
    if (*k == -level + 1) return -amplitude * qpow(p, level - 1);
    return {};
}

TestFunction EigenProfile::materialize() const {
    TestFunction u(p, 1, -level + 1, level);
    for (std::int64_t i = 0; i < u.size(); ++i)
        u[i] = i == 0 ? amplitude * qpow(p, level) * (1.0 - 1.0 / p) : -amplitude * qpow(p, level - 1);
    return u;
}

double eigen_residual(int p, int level, double alpha, int lowest, int highest, std::optional<complex> amplitude) {
    if (highest < -level + 2 || lowest > highest)
        throw std::invalid_argument("eigen window must reach |x| = q^{-N+2}");
    const EigenProfile profile{p, level, amplitude.value_or(EigenProfile::unit_amplitude(p, level)), alpha};
    const TestFunction u = profile.materialize();
    std::vector<PointKn> targets{origin(p, 1)};
    for (int k = lowest; k <= highest; ++k) {
        targets.push_back(PointKn{{PAdicRational::power_of_p(p, -k)}});
        if (p > 2) targets.push_back(PointKn{{PAdicRational::from_parts(p, p - 1, -k)}});
    }
    const SampledField image = apply_D_alpha(u, alpha, targets);
    double worst = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        worst = std::max(worst, std::abs(image.values[i] - profile.eigenvalue() * profile.value(targets[i].coords[0])));
    return worst;
}

NullspaceReport radial_nullspace_check(int p, double alpha, int level, int window_M, int window_L) {
    require_positive_order(alpha);
    if (level > window_L || -level + 1 > window_M - 1)
        throw std::domain_error("window too small: the level-" + std::to_string(level) +
                                " profile needs L >= N and M >= -N + 2");
    const int support = window_M - 1;
    const int cols = window_M + window_L;  // B_{-L} and S_k for -L < k < M
    std::vector<PointKn> rows{origin(p, 1)};
    for (int k = -window_L + 1; k <= window_M + 1; ++k) rows.push_back(PointKn{{PAdicRational::power_of_p(p, -k)}});

    NullspaceReport report;
    const double lambda = std::pow(static_cast<double>(p), alpha * level);
    Eigen::MatrixXd T(static_cast<Eigen::Index>(rows.size()), cols);
    for (int j = 0; j < cols; ++j) {
        const int basis_level = j == 0 ? -window_L : -window_L + j;
        report.basis_levels.push_back(basis_level);
        report.basis_volumes.push_back(j == 0 ? qpow(p, -window_L) : qpow(p, basis_level) * (1.0 - 1.0 / p));
        const TestFunction e = radial_function(p, 1, support, window_L, j == 0 ? 1.0 : 0.0,
                                               [&](int k) { return (j > 0 && k == basis_level) ? 1.0 : 0.0; });
        const SampledField De = apply_D_alpha(e, alpha, rows);
        for (std::size_t r = 0; r < rows.size(); ++r)
            T(static_cast<Eigen::Index>(r), j) = De.values[r].real() - lambda * e.evaluate(rows[r]).real();
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) report.singular_values.push_back(s(i));
    const double tol = 1e-9 * std::max(1.0, s(0));
    report.dimension = static_cast<int>(std::count_if(report.singular_values.begin(), report.singular_values.end(),
                                                      [&](double v) { return v <= tol; }));

    Eigen::VectorXd v = svd.matrixV().col(cols - 1);
    const EigenProfile profile{p, level, EigenProfile::unit_amplitude(p, level), alpha};
    Eigen::VectorXd w(cols);
    for (int j = 0; j < cols; ++j) {
        const int k = report.basis_levels[static_cast<std::size_t>(j)];
        w(j) = j == 0 ? profile.value(PAdicRational(p)).real() : profile.value(PAdicRational::power_of_p(p, -k)).real();
    }
    w.normalize();
    v.normalize();
    if (v.dot(w) < 0) v = -v;
    report.profile_error = (v - v.dot(w) * w).norm();
    report.null_vector.assign(v.data(), v.data() + v.size());
    return report;
}

}  // namespace ultrawave
