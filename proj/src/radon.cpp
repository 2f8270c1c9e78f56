#include "ultrawave/radon.hpp"

#include "ultrawave/fourier.hpp"

#include <algorithm>
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

}  // namespace

int minimal_sphere_resolution(int support, int resolution) { return std::max(1, support + resolution); }

int backprojection_resolution(int support, int resolution, std::optional<long> shift_exponent) {
    const long k = shift_exponent.value_or(support);
    return std::max(minimal_sphere_resolution(support, resolution),
                    resolution + static_cast<int>(std::max<long>(support, k)));
}

const TestFunction& RadonTable::slice_at(const PointKn& eta) const {
    if (eta.dim() != n_ || eta.norm_exponent() != 0L) throw std::invalid_argument("direction must satisfy ||eta|| = 1");
    const auto index = CosetGrid(p_, n_, 0, m_).index_of(eta);
    const auto it = std::lower_bound(grid_index_.begin(), grid_index_.end(), *index);
    return slice(static_cast<std::size_t>(it - grid_index_.begin()));
}

double RadonTable::direction_volume() const { return qpow(p_, -static_cast<double>(n_) * m_); }

RadonTable& RadonTable::operator+=(const RadonTable& other) {
    if (p_ != other.p_ || n_ != other.n_ || m_ != other.m_ || support_ != other.support_ ||
        resolution_ != other.resolution_ || margin_ != other.margin_)
        throw std::invalid_argument("adding Radon tables with different parameters");
    for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] += other.slices_[i];
    return *this;
}

RadonTable& RadonTable::operator*=(complex s) {
    for (auto& slice : slices_) slice *= s;
    return *this;
}

nlohmann::json RadonTable::header() const {
    return {{"n", n_}, {"p", p_}, {"m", m_}, {"N_s", support_}, {"l_s", resolution_}, {"margin", margin_}};
}

void RadonTable::write_csv(std::ostream& os) const {
    os << "eta_repr,s_repr,re,im\n";
    for (std::size_t d = 0; d < directions_.size(); ++d) {
        const std::string eta = directions_[d].to_string();
        const TestFunction& f = slice(d);
        for (std::int64_t i = 0; i < f.size(); ++i)
            os << eta << ',' << f.grid().point(i).to_string() << ',' << format_double(f[i].real()) << ','
               << format_double(f[i].imag()) << '\n';
    }
}

RadonTable radon_forward(const TestFunction& phi, int sphere_resolution, int margin) {
    const int p = phi.prime(), n = phi.dim(), N = phi.support(), l = phi.resolution();
    if (sphere_resolution < minimal_sphere_resolution(N, l))
        throw std::invalid_argument("sphere resolution m = " + std::to_string(sphere_resolution) +
                                    " is below the joint-constancy bound max(1, N + l) = " +
                                    std::to_string(minimal_sphere_resolution(N, l)));
    if (margin < 0) throw std::invalid_argument("margin must be >= 0");

    RadonTable table;
    table.p_ = p;
    table.n_ = n;
    table.m_ = sphere_resolution;
    table.support_ = N;
    table.resolution_ = l;
    table.margin_ = margin;

    const TestFunction spectrum = fourier(phi);
    const std::int64_t side = spectrum.grid().side();  // p^{N+l}
    const CosetGrid sphere(p, n, 0, sphere_resolution);
    table.grid_index_ = sphere_indices(sphere);

    std::map<std::vector<std::int64_t>, std::size_t> by_residue;
    std::vector<std::vector<std::int64_t>> residues;
    std::vector<std::int64_t> digits(static_cast<std::size_t>(n));
    for (const auto index : table.grid_index_) {
        table.directions_.push_back(sphere.point(index));
        sphere.digits(index, digits);
        std::vector<std::int64_t> e(digits.size());
        for (std::size_t j = 0; j < e.size(); ++j) e[j] = digits[j] % side;
        const auto [it, fresh] = by_residue.emplace(e, residues.size());
        if (fresh) residues.push_back(std::move(e));
        table.slice_of_.push_back(it->second);
    }

    table.slices_.assign(residues.size(), TestFunction(p, 1, N + margin, l));
    parallel_for(static_cast<std::int64_t>(residues.size()), [&](std::int64_t u) {
        const auto& e = residues[static_cast<std::size_t>(u)];
        // s = c p^{-l}: s eta has digits c e_j mod p^{N+l} on the spectrum grid.
        TestFunction along(p, 1, l, N);
        std::vector<std::int64_t> d(static_cast<std::size_t>(n));
        for (std::int64_t c = 0; c < side; ++c) {
            for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = (c * e[static_cast<std::size_t>(j)]) % side;
            along[c] = spectrum[spectrum.grid().compose(d)];
        }
        table.slices_[static_cast<std::size_t>(u)] = inverse_fourier(along.refine(l, N + margin));
    });
    return table;
}

complex radon_point(const TestFunction& phi, const PointKn& xi, const PAdicRational& r) {
    const auto k = xi.norm_exponent();
    if (!k) throw std::invalid_argument("radon_point needs xi != 0");
    if (xi.dim() != phi.dim()) throw std::invalid_argument("direction dimension does not match the function");
    const TestFunction spectrum = fourier(phi);
    // s -> phi~(s xi) is supported on |s| <= q^{l-k} and constant on s + p^{N+k} O.
    const int S = phi.resolution() - static_cast<int>(*k);
    const int R = phi.support() + static_cast<int>(*k);
    const auto rk = r.abs_exponent();
    if (rk && *rk > R) return {};
    const CosetGrid grid(phi.prime(), 1, S, R);
    CompensatedSum acc;
    for (std::int64_t i = 0; i < grid.size(); ++i) {
        const PAdicRational s = grid.coordinate(i);
        const complex g = spectrum.evaluate(scale(s, xi));
        if (g != complex{}) acc.add((-(s * r)).character() * g);
    }
    return acc.value() * grid.cell_volume_double();
}

std::vector<complex> radon_backproject(const RadonTable& table, const std::vector<PAdicRational>& times,
                                       const std::vector<PointKn>& points, int order) {
    if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
    const int p = table.prime(), n = table.dim();
    const int N = table.slice_support(), l = table.slice_resolution();

    // K: every shift t + eta . x lies in B_K.
    long K = N + table.margin();
    auto widen = [&](std::optional<long> k) {
        if (k) K = std::max(K, *k);
    };
    for (const auto& t : times) widen(t.abs_exponent());
    for (const auto& x : points) {
        if (x.dim() != n) throw std::invalid_argument("target dimension does not match the table");
        widen(x.norm_exponent());
    }
    for (const auto& t : times)
        for (const auto& x : points) {
            std::optional<long> k = t.abs_exponent();
            if (const auto xk = x.norm_exponent()) k = k ? std::max(*k, *xk) : xk;
            const int needed = backprojection_resolution(N, l, k);
            if (table.sphere_resolution() < needed)
                throw std::domain_error("sphere resolution m = " + std::to_string(table.sphere_resolution()) +
                                        " too coarse at t = " + t.to_string() + ", x = " + x.to_string() +
                                        " (needs m >= " + std::to_string(needed) + ")");
        }

    // Per distinct slice: (D^order slice) on the grid (K, l).
    const CosetGrid shifts(p, 1, static_cast<int>(K), l);
    const std::int64_t side = shifts.side();
    std::vector<const TestFunction*> distinct;
    std::vector<std::size_t> lookup_of(table.directions().size());
    {
        std::map<const TestFunction*, std::size_t> seen;
        for (std::size_t d = 0; d < table.directions().size(); ++d) {
            const TestFunction* f = &table.slice(d);
            const auto [it, fresh] = seen.emplace(f, distinct.size());
            if (fresh) distinct.push_back(f);
            lookup_of[d] = it->second;
        }
    }
    std::vector<std::vector<complex>> lookups(distinct.size());
    std::vector<PointKn> shift_points;
    if (order > 0)
        for (std::int64_t i = 0; i < side; ++i) shift_points.push_back(shifts.point(i));
    parallel_for(static_cast<std::int64_t>(distinct.size()), [&](std::int64_t u) {
        const TestFunction& f = *distinct[static_cast<std::size_t>(u)];
        if (order == 0)
            lookups[static_cast<std::size_t>(u)] = f.refine(static_cast<int>(K), l).values();
        else
            lookups[static_cast<std::size_t>(u)] = apply_D_alpha(f, order, shift_points).values;
    });

    // r p^K mod p^{K+l} = T + sum_j c_j X_j, all integers.
    auto residue = [&](const PAdicRational& v) -> std::int64_t {
        if (v.is_zero()) return 0;
        return (v * PAdicRational::power_of_p(p, K)).residue(static_cast<int>(K) + l);
    };
    std::vector<std::int64_t> T;
    for (const auto& t : times) T.push_back(residue(t));
    std::vector<std::int64_t> X;
    for (const auto& x : points)
        for (const auto& c : x.coords) X.push_back(residue(c));
    std::vector<std::int64_t> C;
    {
        const CosetGrid sphere(p, n, 0, table.sphere_resolution());
        std::vector<std::int64_t> digits(static_cast<std::size_t>(n));
        for (const auto& eta : table.directions()) {
            sphere.digits(*sphere.index_of(eta), digits);
            for (auto d : digits) C.push_back(d % side);
        }
    }

    const std::size_t nx = points.size();
    const double scale = table.direction_volume() / (1.0 - 1.0 / p);
    std::vector<complex> out(times.size() * nx);
    parallel_for(static_cast<std::int64_t>(out.size()), [&](std::int64_t cell) {
        const std::size_t ti = static_cast<std::size_t>(cell) / nx, xi = static_cast<std::size_t>(cell) % nx;
        const std::int64_t* xr = &X[xi * static_cast<std::size_t>(n)];
        CompensatedSum acc;
        for (std::size_t d = 0; d < table.directions().size(); ++d) {
            const std::int64_t* c = &C[d * static_cast<std::size_t>(n)];
            unsigned __int128 r = static_cast<unsigned __int128>(T[ti]);
            for (int j = 0; j < n; ++j) r += static_cast<unsigned __int128>(c[j]) * static_cast<unsigned __int128>(xr[j]);
            const auto digit = static_cast<std::size_t>(r % static_cast<unsigned __int128>(side));
            acc.add(lookups[lookup_of[d]][digit]);
        }
        out[static_cast<std::size_t>(cell)] = acc.value() * scale;
    });
    return out;
}

complex radon_backproject(const RadonTable& table, const PAdicRational& t, const PointKn& x, int order) {
    return radon_backproject(table, std::vector<PAdicRational>{t}, std::vector<PointKn>{x}, order).front();
}

SampledField radon_inverse(const RadonTable& table, const std::vector<PointKn>& targets) {
    const int order = table.dim() - 1;
    SampledField out;
    out.points = targets;
    out.values.resize(targets.size());
    out.op = "radon_inverse";
    out.alpha = order;
    out.values = radon_backproject(table, std::vector<PAdicRational>{PAdicRational(table.prime())}, targets, order);
    return out;
}

double radon_vanishing_check(const RadonTable& table) {
    double worst = 0.0;
    for (std::size_t d = 0; d < table.directions().size(); ++d) {
        const TestFunction& f = table.slice(d);
        for (std::int64_t i = 0; i < f.size(); ++i) {
            const auto k = f.grid().norm_exponent(i);
            if (k && *k > table.slice_support()) worst = std::max(worst, std::abs(f[i]));
        }
    }
    return worst;
}

}  // namespace ultrawave
