#include "ultrawave/cli.hpp"

#include "ultrawave/fourier.hpp"
#include "ultrawave/waves.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace ultrawave::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kCommands{"eigen", "planewave", "radon", "cauchy", "degeneracy", "norms", "fourier-selftest"};
const std::vector<std::string> kRoutes{"radon", "direct", "spectral", "convolution"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_routes(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

// Flat key,value rows for --format csv.
void flatten(const json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
    } else {
        os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void add_report(CommandResult& result, const ExperimentConfig& config, json report) {
    report["command"] = config.command;
    report["pass"] = result.pass;
    report["config"] = {{"p", config.p}, {"n", config.n}, {"alpha", config.alpha}, {"N", config.N},
                        {"l", config.l},  {"seed", config.seed}, {"routes", config.routes}};
    const std::string stem = config.command == "fourier-selftest" ? "fourier_selftest" : config.command;
    if (config.format == "json") {
        result.files[stem + "_report.json"] = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "key,value\n";
        flatten(report, "", os);
        result.files[stem + "_report.csv"] = os.str();
    }
}

// gnuplot script over columns 2.. of a whitespace table with a header comment.
std::string plot_script(const std::string& stem, const std::string& xlabel, const std::vector<std::string>& series,
                        bool logscale_y = false) {
    std::ostringstream os;
    os << "set terminal pngcairo size 900,600\n"
       << "set output '" << stem << ".png'\n"
       << "set xlabel '" << xlabel << "'\n"
       << "set key outside\n";
    if (logscale_y) os << "set logscale y\n";
    os << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i)
        os << (i ? ", \\\n     " : "") << "'" << stem << ".dat' using 1:" << i + 2 << " with linespoints title '" << series[i] << "'";
    os << "\n";
    return os.str();
}

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    std::int64_t below(std::int64_t bound) { return static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(bound)); }

    /// Point of B_support^n with depth + support p-adic digits per coordinate.
    PointKn ball_point(int p, int n, int support, int depth) {
        PointKn x;
        const std::int64_t side = ipow(p, support + depth);
        for (int j = 0; j < n; ++j) x.coords.push_back(PAdicRational::from_parts(p, mpz_class(static_cast<long>(below(side))), -support));
        return x;
    }

    /// Integral vector with one unit coordinate.
    PointKn unit_vector(int p, int n) {
        PointKn w = ball_point(p, n, 0, 3);
        const auto j = static_cast<std::size_t>(below(n));
        w.coords[j] = PAdicRational(p, static_cast<long>(1 + p * below(p * p) + below(p - 1)));
        return w;
    }

private:
    std::mt19937_64 rng_;
};

std::vector<PointKn> make_targets(Random& rng, int p, int n, int support, int depth, int count) {
    std::vector<PointKn> xs{origin(p, n)};
    while (static_cast<int>(xs.size()) < count) xs.push_back(rng.ball_point(p, n, support, depth));
    return xs;
}

// ------------------------------------------------------------- commands

CommandResult cmd_eigen(const ExperimentConfig& c) {
    CommandResult r;
    const int lowest = -c.N - 3, highest = -c.N + 3;
    const double residual = eigen_residual(c.p, c.N, c.alpha, lowest, highest);
    const int M = std::max(3, 2 - c.N), L = std::max(3, c.N + 2);
    const NullspaceReport ns = radial_nullspace_check(c.p, c.alpha, c.N, M, L);
    r.pass = residual <= 1e-11 && ns.dimension == 1 && ns.profile_error <= 1e-8;

    const EigenProfile profile{c.p, c.N, EigenProfile::unit_amplitude(c.p, c.N), c.alpha};
    const TestFunction u = profile.materialize();
    std::vector<PointKn> xs;
    std::vector<int> ks;
    for (int k = lowest; k <= highest; ++k) {
        ks.push_back(k);
        xs.push_back(PointKn{{PAdicRational::power_of_p(c.p, -k)}});
    }
    const SampledField Du = apply_D_alpha(u, c.alpha, xs);
    std::ostringstream dat;
    dat << "# log_q|x| u(x) (D^alpha u)(x)/lambda\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        dat << ks[i] << ' ' << num(u.evaluate(xs[i]).real()) << ' ' << num(Du.values[i].real() / profile.eigenvalue()) << '\n';
    r.files["eigen.dat"] = dat.str();
    r.files["eigen.plt"] = plot_script("eigen", "log_q |x|", {"u", "D^alpha u / lambda"});

    add_report(r, c,
               {{"residual", residual},
                {"eigenvalue", profile.eigenvalue()},
                {"nullspace",
                 {{"dimension", ns.dimension},
                  {"profile_error", ns.profile_error},
                  {"singular_values", ns.singular_values},
                  {"window", {{"M", M}, {"L", L}}}}}});
    r.summary = "residual " + num(residual) + ", null-space dimension " + std::to_string(ns.dimension);
    return r;
}

CommandResult cmd_planewave(const ExperimentConfig& c) {
    CommandResult r;
    Random rng(c.seed);
    const PlaneWaveSpec spec{random_test_function(c.seed, c.p, 1, c.N, c.l, false, false), rng.unit_vector(c.p, c.n)};
    std::vector<PointKn> points;
    for (int i = 0; i < 30; ++i) points.push_back(space_time_point(rng.ball_point(c.p, 1, 1, 2).coords[0], rng.ball_point(c.p, c.n, 1, 2)));

    std::vector<complex> dt(points.size()), dx(points.size());
    parallel_for(static_cast<std::int64_t>(points.size()), [&](std::int64_t i) {
        const auto& tx = points[static_cast<std::size_t>(i)];
        const PointKn x{{tx.coords.begin() + 1, tx.coords.end()}};
        dt[static_cast<std::size_t>(i)] = plane_wave_Dt(spec, c.alpha, tx.coords[0], x);
        dx[static_cast<std::size_t>(i)] = plane_wave_Dx(spec, c.alpha, tx.coords[0], x);
    });
    double residual = 0.0;
    std::ostringstream csv, dat;
    csv << "t_repr,x_repr,dt_re,dt_im,dx_re,dx_im\n";
    dat << "# point D_t^alpha F (re) D_x^{alpha,n} F (re)\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        residual = std::max(residual, std::abs(dt[i] - dx[i]));
        const PointKn x{{points[i].coords.begin() + 1, points[i].coords.end()}};
        csv << points[i].coords[0].to_string() << ',' << x.to_string() << ',' << num(dt[i].real()) << ',' << num(dt[i].imag())
            << ',' << num(dx[i].real()) << ',' << num(dx[i].imag()) << '\n';
        dat << i << ' ' << num(dt[i].real()) << ' ' << num(dx[i].real()) << '\n';
    }
    r.pass = residual <= 1e-9;
    r.files["planewave.csv"] = csv.str();
    r.files["planewave.dat"] = dat.str();
    r.files["planewave.plt"] = plot_script("planewave", "point", {"D_t^alpha F", "D_x^{alpha,n} F"});
    add_report(r, c, {{"residual_max", residual}, {"omega", spec.omega.to_string()}, {"points", points.size()}});
    r.summary = "residual " + num(residual);
    return r;
}

CommandResult cmd_radon(const ExperimentConfig& c) {
    CommandResult r;
    Random rng(c.seed);
    const TestFunction phi = random_test_function(c.seed, c.p, c.n, c.N, c.l, false, false);
    const auto xs = make_targets(rng, c.p, c.n, c.N, c.l + 1, 20);
    int m = minimal_sphere_resolution(c.N, c.l);
    for (const auto& x : xs) m = std::max(m, backprojection_resolution(c.N, c.l, x.norm_exponent()));
    const RadonTable table = radon_forward(phi, m);
    const SampledField back = radon_inverse(table, xs);
    double error = 0.0;
    std::ostringstream dat;
    dat << "# target phi (re) reconstruction (re)\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const complex v = phi.evaluate(xs[i]);
        error = std::max(error, std::abs(back.values[i] - v));
        dat << i << ' ' << num(v.real()) << ' ' << num(back.values[i].real()) << '\n';
    }
    const double vanishing = radon_vanishing_check(table);
    r.pass = error <= 1e-9 && vanishing <= 1e-12;
    std::ostringstream csv;
    table.write_csv(csv);
    r.files["radon_table.csv"] = csv.str();
    r.files["radon.dat"] = dat.str();
    r.files["radon.plt"] = plot_script("radon", "target", {"phi", "reconstruction"});
    add_report(r, c, {{"roundtrip_max", error}, {"vanishing_max", vanishing}, {"table", table.header()}});
    r.summary = "roundtrip " + num(error);
    return r;
}

CommandResult cmd_cauchy(const ExperimentConfig& c) {
    CommandResult r;
    Random rng(c.seed);
    const bool needs_Phi = std::any_of(c.routes.begin(), c.routes.end(), [](const auto& s) { return s == "spectral" || s == "convolution"; });
    const bool zero_mean = needs_Phi || c.n >= 2;
    const TestFunction phi = random_test_function(c.seed, c.p, c.n, c.N, c.l, zero_mean, false);
    const TimeGrid times{c.N + 2, c.l + 1};
    const auto xs = make_targets(rng, c.p, c.n, c.N + 1, c.l + 1, 12);

    std::vector<SpaceTimeField> fields;
    for (const auto& route : c.routes) {
        if (route == "radon") fields.push_back(cauchy_radon(phi, CauchyVariant::F2, times, xs));
        if (route == "direct") fields.push_back(cauchy_direct(phi, times, xs));
        if (route == "spectral") fields.push_back(cauchy_spectral(phi, times, xs));
        if (route == "convolution") fields.push_back(cauchy_convolution(phi, times, xs));
    }

    json deltas = json::object();
    double worst_delta = 0.0;
    for (std::size_t a = 0; a < fields.size(); ++a)
        for (std::size_t b = a + 1; b < fields.size(); ++b) {
            const double d = field_delta(fields[a], fields[b]);
            worst_delta = std::max(worst_delta, d);
            deltas[c.routes[a] + "-" + c.routes[b]] = d;
        }
    double ic = 0.0, radial = 0.0;
    for (const auto& f : fields) {
        ic = std::max(ic, modified_initial_condition_residual(f, phi));
        radial = std::max(radial, f.radial_defect());
    }
    const SpaceTimeField F1 = cauchy_radon(phi, CauchyVariant::F1, times, xs);
    const double ic1 = initial_condition_residual(F1, phi);
    const HuygensReport h = huygens_check(phi, fields.front());
    r.pass = worst_delta <= 1e-8 && ic <= 1e-9 && ic1 <= 1e-9 && radial <= 1e-12 && h.edge_max <= 1e-10 &&
             h.constancy_exponent <= phi.resolution();

    for (const auto& f : fields) {
        std::ostringstream os;
        f.write_csv(os);
        r.files["cauchy_" + f.route + ".csv"] = os.str();
    }
    {
        std::ostringstream os;
        F1.write_csv(os);
        r.files["cauchy_F1.csv"] = os.str();
    }
    // F_2(t, 0) against the t-coset index, one column per route.
    std::ostringstream dat;
    dat << "# t-coset";
    for (const auto& f : fields) dat << ' ' << f.route;
    dat << '\n';
    for (std::size_t ti = 0; ti < fields.front().times.size(); ++ti) {
        dat << ti;
        for (const auto& f : fields) dat << ' ' << num(f.at(ti, 0).real());
        dat << '\n';
    }
    r.files["cauchy.dat"] = dat.str();
    std::vector<std::string> names;
    for (const auto& f : fields) names.push_back(f.route);
    r.files["cauchy.plt"] = plot_script("cauchy", "t-coset index (x = 0)", names);

    add_report(r, c,
               {{"residual_max", std::max(ic, ic1)},
                {"initial_condition_F1", ic1},
                {"initial_condition_F2", ic},
                {"radial_defect", radial},
                {"route_deltas", deltas},
                {"huygens",
                 {{"edge_max", h.edge_max},
                  {"constancy_radius", h.constancy_radius},
                  {"constancy_exponent", h.constancy_exponent},
                  {"outside_support_max", h.outside_support_max},
                  {"route", fields.front().route}}},
                {"phi_in_Phi", zero_mean}});
    r.summary = "max route delta " + num(worst_delta) + ", initial conditions " + num(std::max(ic, ic1));
    return r;
}

CommandResult cmd_degeneracy(const ExperimentConfig& c) {
    CommandResult r;
    const DegeneracyReport d = symbol_degeneracy(c.p, c.n, c.alpha, c.N, c.l);
    r.pass = d.fraction == d.closed_form && d.fraction > 0;
    std::ostringstream dat;
    dat << "# level zero-set pairs\n";
    const CosetGrid tau(c.p, 1, c.N, c.l), xi(c.p, c.n, c.N, c.l);
    for (int k = -c.l + 1; k <= c.N; ++k) {
        std::int64_t a = 0, b = 0;
        for (std::int64_t i = 0; i < tau.size(); ++i) a += tau.norm_exponent(i) == k;
        for (std::int64_t i = 0; i < xi.size(); ++i) b += xi.norm_exponent(i) == k;
        dat << k << ' ' << a * b << '\n';
    }
    r.files["degeneracy.dat"] = dat.str();
    r.files["degeneracy.plt"] = plot_script("degeneracy", "log_q |tau| = log_q ||xi||", {"coset pairs"}, true);
    add_report(r, c,
               {{"degeneracy_fraction", d.fraction.get_d()},
                {"fraction_exact", d.fraction.get_str()},
                {"closed_form_exact", d.closed_form.get_str()},
                {"count", d.count},
                {"cells", d.cells},
                {"truncated_measure", d.truncated_measure}});
    r.summary = "fraction " + d.fraction.get_str() + " (closed form " + d.closed_form.get_str() + ")";
    return r;
}

CommandResult cmd_norms(const ExperimentConfig& c) {
    CommandResult r;
    const TestFunction phi = random_test_function(c.seed, c.p, c.n, c.N, c.l, c.n >= 2, false);
    std::vector<double> kappas;
    if (c.n >= 2) {
        const double top = static_cast<double>(c.n) / (c.n - 1);
        for (double s : {0.25, 0.5, 0.75}) kappas.push_back(1.0 + s * (top - 1.0));
    } else {
        kappas = {1.5, 2.0, 3.0};
    }
    const TimeGrid times{c.N + 2, c.l};
    const auto rows = norm_report(phi, times, kappas);
    json table = json::array();
    std::ostringstream dat;
    dat << "# t-coset kappa f1_ratio f2_ratio\n";
    std::size_t i = 0;
    for (const auto& row : rows) {
        json j{{"t", row.t.to_string()}, {"kappa", row.kappa}, {"f1_ratio", row.f1_ratio}, {"B_l1", row.b_l1.get_str()}};
        if (row.lambda) j["lambda"] = *row.lambda;
        if (row.f2_ratio) j["f2_ratio"] = *row.f2_ratio;
        table.push_back(j);
        dat << i / kappas.size() << ' ' << num(row.kappa) << ' ' << num(row.f1_ratio) << ' '
            << (row.f2_ratio ? num(*row.f2_ratio) : std::string("NaN")) << '\n';
        ++i;
    }
    r.files["norms.dat"] = dat.str();
    r.files["norms.plt"] = "set terminal pngcairo size 900,600\nset output 'norms.png'\nset xlabel 't-coset index'\n"
                           "plot 'norms.dat' using 1:3 title 'F_1 ratio', 'norms.dat' using 1:4 title 'F_2 ratio'\n";
    add_report(r, c, {{"norm_table", table}, {"kappas", kappas}});
    r.summary = std::to_string(rows.size()) + " rows";
    return r;
}

CommandResult cmd_fourier_selftest(const ExperimentConfig& c) {
    CommandResult r;
    double roundtrip = 0.0, plancherel = 0.0, fast_direct = 0.0;
    std::ostringstream dat;
    dat << "# sample roundtrip plancherel fast_vs_direct\n";
    for (int s = 0; s < 10; ++s) {
        const TestFunction f = random_test_function(c.seed + static_cast<std::uint64_t>(s), c.p, c.n, c.N, c.l, false, false);
        const TestFunction g = fourier(f);
        const double a = max_abs_difference(inverse_fourier(g), f);
        const double b = std::abs(g.lkappa_norm(2.0) - f.lkappa_norm(2.0));
        const double d = max_abs_difference(fourier_fast(f), fourier_direct(f));
        roundtrip = std::max(roundtrip, a);
        plancherel = std::max(plancherel, b);
        fast_direct = std::max(fast_direct, d);
        dat << s << ' ' << num(a) << ' ' << num(b) << ' ' << num(d) << '\n';
    }
    r.pass = roundtrip <= 1e-12 && plancherel <= 1e-12 && fast_direct <= 1e-12;
    r.files["fourier_selftest.dat"] = dat.str();
    r.files["fourier_selftest.plt"] = plot_script("fourier_selftest", "sample", {"roundtrip", "plancherel", "fast vs direct"});
    add_report(r, c, {{"roundtrip_max", roundtrip}, {"plancherel_max", plancherel}, {"fast_vs_direct_max", fast_direct}});
    r.summary = "roundtrip " + num(roundtrip) + ", Plancherel " + num(plancherel);
    return r;
}

// ------------------------------------------------------------- config

template <typename T>
void take(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

void apply_config_file(const std::string& path, ExperimentConfig& c) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        static const std::vector<std::string> known{"p", "n", "alpha", "N", "l", "seed", "routes", "out", "format"};
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
    }
    take(j, "p", c.p);
    take(j, "n", c.n);
    take(j, "alpha", c.alpha);
    take(j, "N", c.N);
    take(j, "l", c.l);
    take(j, "seed", c.seed);
    take(j, "out", c.out);
    take(j, "format", c.format);
    if (j.contains("routes")) {
        if (j["routes"].is_string())
            c.routes = split_routes(j["routes"].get<std::string>());
        else
            take(j, "routes", c.routes);
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) throw ConfigError("unknown command '" + command + "'");
    if (p < 2 || !is_prime(p)) throw ConfigError("--p must be a prime, got " + std::to_string(p));
    if (n < 1 || n > 3) throw ConfigError("--n must be 1, 2 or 3");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("--alpha must be a positive number");
    if (N + l < 0) throw ConfigError("--N and --l must satisfy N + l >= 0");
    if (N < -4 || N > 4 || l < -4 || l > 4) throw ConfigError("--N and --l must lie in [-4, 4]");
    if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
    if (routes.empty()) throw ConfigError("--routes must name at least one route");
    for (const auto& route : routes)
        if (std::find(kRoutes.begin(), kRoutes.end(), route) == kRoutes.end()) throw ConfigError("unknown route '" + route + "'");
    if (command == "cauchy" && n == 1)
        for (const auto& route : routes)
            if (route == "spectral" || route == "convolution") throw ConfigError("route '" + route + "' needs --n >= 2");
    // Grid sizes: keep every enumerated table below ~10^7 cells.
    const double cells = std::pow(p, static_cast<double>(n) * (N + l + (command == "planewave" ? 2 : 1)));
    if (cells > 1e7) throw ConfigError("grid too large for p, n, N, l");
}

CommandResult run_command(const ExperimentConfig& config) {
    config.validate();
    try {
        if (config.command == "eigen") return cmd_eigen(config);
        if (config.command == "planewave") return cmd_planewave(config);
        if (config.command == "radon") return cmd_radon(config);
        if (config.command == "cauchy") return cmd_cauchy(config);
        if (config.command == "degeneracy") return cmd_degeneracy(config);
        if (config.command == "norms") return cmd_norms(config);
        return cmd_fourier_selftest(config);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

int main(int argc, const char* const* argv) {
    CLI::App app{"ultrawave: p-adic Vladimirov operators, Radon transforms and wave equations"};
    app.require_subcommand(1);

    std::optional<int> p, n, N, l;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> routes, out, format;
    std::string config_path;

    const std::map<std::string, std::string> about{
        {"eigen", "eigen relation and radial null space of D^alpha"},
        {"planewave", "plane waves against the wave equation"},
        {"radon", "Radon transform roundtrip"},
        {"cauchy", "Cauchy problem routes, initial conditions and Huygens check"},
        {"degeneracy", "zero set of the symbol |tau|^alpha - ||xi||^alpha"},
        {"norms", "L_kappa norm report"},
        {"fourier-selftest", "Fourier inversion, Plancherel and fast/direct agreement"}};
    for (const auto& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("--p", p, "prime");
        sub->add_option("--n", n, "spatial dimension");
        sub->add_option("--alpha", alpha, "order of the operator");
        sub->add_option("--N", N, "support exponent");
        sub->add_option("--l", l, "resolution exponent");
        sub->add_option("--seed", seed, "seed for the random test functions");
        sub->add_option("--routes", routes, "comma-separated Cauchy routes");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--format", format, "report format: json or csv");
        sub->add_option("--config", config_path, "JSON config file; flags override it");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    ExperimentConfig config;
    fs::path out_dir;
    std::vector<fs::path> written;
    try {
        config.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) apply_config_file(config_path, config);
        if (p) config.p = *p;
        if (n) config.n = *n;
        if (alpha) config.alpha = *alpha;
        if (N) config.N = *N;
        if (l) config.l = *l;
        if (seed) config.seed = *seed;
        if (routes) config.routes = split_routes(*routes);
        if (out) config.out = *out;
        if (format) config.format = *format;

        const CommandResult result = run_command(config);
        out_dir = config.out;
        fs::create_directories(out_dir);
        for (const auto& [name, content] : result.files) {
            const fs::path path = out_dir / name;
            written.push_back(path);
            std::ofstream os(path, std::ios::binary);
            os << content;
            if (!os) throw std::runtime_error("cannot write " + path.string());
        }
        std::cout << config.command << ": " << (result.pass ? "PASS" : "FAIL") << " (" << result.summary << ")\n";
        return result.pass ? kPass : kCheckFailure;
    } catch (const ConfigError& e) {
        for (const auto& path : written) fs::remove(path);
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        for (const auto& path : written) fs::remove(path);
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailure;
    }
}

}  // namespace ultrawave::cli
