#include "ultrawave/schwartz.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace ultrawave {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TestFunction::TestFunction(int p, int n, int support, int resolution)
    : grid_(p, n, support, resolution), values_(static_cast<std::size_t>(grid_.size())) {}

TestFunction::TestFunction(int p, int n, int support, int resolution, std::vector<complex> values)
    : grid_(p, n, support, resolution), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.size())
        throw std::invalid_argument("table length " + std::to_string(values_.size()) + " does not match p^{n(N+l)} = " +
                                    std::to_string(grid_.size()));
}

TestFunction TestFunction::ball_indicator(int p, int n, int radius, int support, int resolution) {
    if (radius > support || radius < -resolution)
        throw std::invalid_argument("ball radius must lie within the grid's scales");
    TestFunction f(p, n, support, resolution);
    for (std::int64_t i = 0; i < f.size(); ++i) {
        const auto k = f.grid_.norm_exponent(i);
        f[i] = (!k || *k <= radius) ? 1.0 : 0.0;
    }
    return f;
}

complex TestFunction::evaluate(const PointKn& x) const {
    const auto index = grid_.index_of(x);
    return index ? values_[static_cast<std::size_t>(*index)] : complex{};
}

complex TestFunction::integrate() const { return compensated_sum(values_) * grid_.cell_volume_double(); }

TestFunction TestFunction::refine(int support, int resolution) const {
    if (support < this->support() || resolution < this->resolution())
        throw std::invalid_argument("refine: target parameters must not shrink (N' >= N, l' >= l)");
    TestFunction out(prime(), dim(), support, resolution);
    const int n = dim();
    std::vector<std::int64_t> fine(static_cast<std::size_t>(n)), coarse(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < out.size(); ++i) {
        out.grid_.digits(i, fine);
        bool inside = true;
        for (int j = 0; j < n && inside; ++j) {
            const auto d = regrid_digit(fine[static_cast<std::size_t>(j)], prime(), support, this->support(),
                                        this->resolution());
            if (!d)
                inside = false;
            else
                coarse[static_cast<std::size_t>(j)] = *d;
        }
        out[i] = inside ? (*this)[grid_.compose(coarse)] : complex{};
    }
    return out;
}

double TestFunction::lkappa_norm(double kappa) const {
    if (!(kappa >= 1.0)) throw std::invalid_argument("L_kappa norm needs kappa >= 1");
    CompensatedSum s;
    for (const auto& v : values_) s.add(std::pow(std::abs(v), kappa));
    return std::pow(s.value().real() * grid_.cell_volume_double(), 1.0 / kappa);
}

LizorkinTag TestFunction::lizorkin_tag(double tolerance) const {
    return {std::abs(integrate()) <= tolerance, std::abs(values_.front()) <= tolerance};
}

TestFunction& TestFunction::operator+=(const TestFunction& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("adding test functions on different grids");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

TestFunction& TestFunction::operator*=(complex s) {
    for (auto& v : values_) v *= s;
    return *this;
}

nlohmann::json TestFunction::to_json() const {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : values_) values.push_back({v.real(), v.imag()});
    return {{"n", dim()}, {"N", support()}, {"l", resolution()}, {"p", prime()}, {"values", std::move(values)}};
}

TestFunction TestFunction::from_json(const nlohmann::json& j) {
    std::vector<complex> values;
    for (const auto& v : j.at("values")) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return TestFunction(j.at("p").get<int>(), j.at("n").get<int>(), j.at("N").get<int>(), j.at("l").get<int>(),
                        std::move(values));
}

void TestFunction::write_csv(std::ostream& os) const {
    os << "coset_repr,re,im\n";
    for (std::int64_t i = 0; i < size(); ++i) {
        const auto& v = values_[static_cast<std::size_t>(i)];
        os << grid_.point(i).to_string() << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
}

double max_abs_difference(const TestFunction& a, const TestFunction& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("comparing test functions on different grids");
    double m = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

TestFunction random_test_function(std::uint64_t seed, int p, int n, int support, int resolution, bool project_Phi,
                                  bool project_Psi) {
    TestFunction f(p, n, support, resolution);
    const std::int64_t size = f.size();
    const std::int64_t free_cells = size - (project_Psi ? 1 : 0);
    if ((project_Phi && free_cells < 2) || (project_Psi && free_cells < 1))
        throw std::invalid_argument("random_test_function: a table of " + std::to_string(size) +
                                    " coset(s) cannot carry a nonzero function with the requested projections");

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> re(static_cast<std::size_t>(size)), im(static_cast<std::size_t>(size));
    for (std::int64_t i = 0; i < size; ++i) {
        re[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rng() % 33) - 16;
        im[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(rng() % 33) - 16;
    }
    const std::int64_t first = project_Psi ? 1 : 0;
    if (project_Psi) re[0] = im[0] = 0;
    if (project_Phi) {
        for (auto* part : {&re, &im}) {
            std::int64_t total = 0;
            for (std::int64_t i = first; i < size; ++i) total += (*part)[static_cast<std::size_t>(i)];
            std::int64_t quotient = total / free_cells;
            std::int64_t remainder = total % free_cells;
            if (remainder < 0) {
                remainder += free_cells;
                --quotient;
            }
            for (std::int64_t i = first; i < size; ++i)
                (*part)[static_cast<std::size_t>(i)] -= quotient + ((i - first) < remainder ? 1 : 0);
        }
    }
    for (std::int64_t i = 0; i < size; ++i)
        f[i] = complex(static_cast<double>(re[static_cast<std::size_t>(i)]) / 16.0,
                       static_cast<double>(im[static_cast<std::size_t>(i)]) / 16.0);
    return f;
}

}  // namespace ultrawave
