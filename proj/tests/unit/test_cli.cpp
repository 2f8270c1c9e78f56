#include "ultrawave/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ultrawave::cli;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ultrawave_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "ultrawave");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return ultrawave::cli::main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json report(const fs::path& path) { return nlohmann::json::parse(slurp(path)); }

}  // namespace

TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run({"eigen", "--p", "2", "--alpha", "1", "--N", "0", "--out", dir.string()}) == kPass);
    CHECK(report(dir / "eigen_report.json")["nullspace"]["dimension"] == 1);
    CHECK(run({"eigen", "--alpha", "-1", "--out", dir.string()}) == kConfigError);
    CHECK(run({"eigen", "--p", "4", "--out", dir.string()}) == kConfigError);
    CHECK(run({"cauchy", "--n", "1", "--routes", "spectral", "--out", dir.string()}) == kConfigError);
    CHECK(run({"cauchy", "--routes", "telepathy", "--out", dir.string()}) == kConfigError);
    CHECK(run({"bogus"}) == kConfigError);
    CHECK(run({"eigen", "--p"}) == kConfigError);
    CHECK(run({"degeneracy", "--format", "xml", "--out", dir.string()}) == kConfigError);
}

TEST_CASE("degeneracy report") {
    const auto dir = scratch("degeneracy");
    REQUIRE(run({"degeneracy", "--p", "2", "--n", "1", "--out", dir.string()}) == kPass);
    const auto j = report(dir / "degeneracy_report.json");
    CHECK(j["fraction_exact"] == "1/3");
    CHECK(std::abs(j["degeneracy_fraction"].get<double>() - 1.0 / 3.0) <= 1e-12);
    CHECK(fs::exists(dir / "degeneracy.dat"));
    CHECK(fs::exists(dir / "degeneracy.plt"));

    REQUIRE(run({"degeneracy", "--p", "3", "--n", "2", "--format", "csv", "--out", dir.string()}) == kPass);
    const std::string csv = slurp(dir / "degeneracy_report.csv");
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("fraction_exact,8/13\n") != std::string::npos);
}

TEST_CASE("cauchy and planewave checks") {
    const auto dir = scratch("cauchy");
    REQUIRE(run({"cauchy", "--p", "2", "--n", "2", "--routes", "radon,spectral,convolution,direct", "--seed", "3", "--out", dir.string()}) ==
            kPass);
    const auto j = report(dir / "cauchy_report.json");
    CHECK(j["route_deltas"].size() == 6);
    for (const auto& [k, v] : j["route_deltas"].items()) CHECK(v.get<double>() <= 1e-8);
    for (const char* f : {"cauchy_radon-F2.csv", "cauchy_direct.csv", "cauchy_spectral.csv", "cauchy_convolution.csv", "cauchy.dat", "cauchy.plt"})
        CHECK(fs::exists(dir / f));

    REQUIRE(run({"planewave", "--p", "3", "--n", "3", "--alpha", "0.5", "--seed", "1", "--out", dir.string()}) == kPass);
    CHECK(report(dir / "planewave_report.json")["residual_max"].get<double>() <= 1e-9);
}

TEST_CASE("config file and flag precedence") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << R"({"p": 3, "n": 2, "N": 0, "l": 2, "format": "csv"})";
    }
    REQUIRE(run({"degeneracy", "--config", (dir / "cfg.json").string(), "--n", "1", "--out", (dir / "o").string()}) == kPass);
    const std::string csv = slurp(dir / "o" / "degeneracy_report.csv");
    CHECK(csv.find("config.p,3\n") != std::string::npos);
    CHECK(csv.find("config.n,1\n") != std::string::npos);
    CHECK(csv.find("config.l,2\n") != std::string::npos);

    {
        std::ofstream cfg(dir / "bad.json");
        cfg << R"({"p": 3, "colour": "blue"})";
    }
    CHECK(run({"degeneracy", "--config", (dir / "bad.json").string(), "--out", (dir / "bad").string()}) == kConfigError);
    CHECK_FALSE(fs::exists(dir / "bad" / "degeneracy_report.json"));
    CHECK(run({"degeneracy", "--config", (dir / "missing.json").string()}) == kConfigError);
}

TEST_CASE("outputs are byte-identical across runs") {
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        REQUIRE(run({"cauchy", "--p", "3", "--n", "2", "--seed", "5", "--out", dir.string()}) == kPass);
        REQUIRE(run({"norms", "--p", "2", "--n", "2", "--seed", "5", "--out", dir.string()}) == kPass);
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
    CHECK(files >= 10);
}
