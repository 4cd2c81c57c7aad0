#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "uot/cli.hpp"
#include "uot/io.hpp"

using namespace uot;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("uot_test_" + tag);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("raster round trip is bit-exact") {
    const fs::path dir = temp_dir("raster");
    const Domain d(-1.5, 2.25, 0.0, 1.0);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> vals(12 * 7);
    for (double& v : vals) v = u(rng);
    const GridDensity g(d, 12, 7, vals);
    const std::string path = (dir / "raster.csv").string();
    save_raster(path, g);
    const GridDensity back = load_raster(path);
    CHECK(back.nx() == 12);
    CHECK(back.ny() == 7);
    CHECK(back.domain().x_min == d.x_min);
    CHECK(back.domain().x_max == d.x_max);
    for (size_t i = 0; i < vals.size(); ++i) CHECK(back.values()[i] == vals[i]);
}

TEST_CASE("points round trip") {
    const fs::path dir = temp_dir("points");
    const Domain d(0, 1, 0, 1);
    const DiscreteMeasure nu(d, {{0.123456789012345, 0.5}, {0.75, 0.25}}, {0.4, 0.6});
    const std::string path = (dir / "nu.csv").string();
    save_points(path, nu);
    const DiscreteMeasure back = load_points(path, d);
    REQUIRE(back.size() == 2);
    CHECK(back.points()[0].x == nu.points()[0].x);
    CHECK(back.masses()[1] == nu.masses()[1]);
}

TEST_CASE("missing files raise clean errors") {
    CHECK_THROWS_AS(load_raster("/nonexistent/raster.csv"), std::runtime_error);
    CHECK_THROWS_AS(load_density("csv:/nonexistent/raster.csv", Domain(0, 1, 0, 1), 8, 8),
                    std::runtime_error);
    CHECK_THROWS_AS(load_density("what", Domain(0, 1, 0, 1), 8, 8), std::runtime_error);
}

TEST_CASE("gaussian bump mass is stable under refinement") {
    const Domain d = bump_domain();
    const double coarse = total_mass(load_density("gaussian-bump", d, 256, 256));
    const double fine = total_mass(load_density("gaussian-bump", d, 512, 512));
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-4));
    // Area term (8 pi)^2 plus the Gaussian 2 pi sigma^2 truncated to the
    // window [-sigma, sigma]^2 (sigma = 4 pi): factor erf(1/sqrt(2))^2.
    const double pi = 3.14159265358979323846;
    const double trunc = std::pow(std::erf(1.0 / std::sqrt(2.0)), 2);
    const double expected = std::pow(8.0 * pi, 2) + 2.0 * pi * std::pow(4.0 * pi, 2) * trunc;
    CHECK(fine == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("experiment runner is deterministic and writes a config echo") {
    const fs::path out1 = temp_dir("run1");
    const fs::path out2 = temp_dir("run2");
    nlohmann::json config = {
        {"command", "quantize"},
        {"model", {{"kind", "ghk"}, {"epsilon", 0.3}}},
        {"grid", {{"domain", {0.0, 1.0, 0.0, 1.0}}, {"nx", 48}, {"ny", 48}}},
        {"M", 6},
        {"solver", {{"method", "lloyd"}, {"max_iter", 10}, {"grad_tol", 1e-3}}},
    };
    const int rc1 = run_experiment(config, "", 7, out1.string());
    const int rc2 = run_experiment(config, "", 7, out2.string());
    CHECK(rc1 == rc2);
    std::ifstream a(out1 / "points.csv"), b(out2 / "points.csv");
    REQUIRE(a.good());
    REQUIRE(b.good());
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    nlohmann::json summary;
    std::ifstream(out1 / "summary.json") >> summary;
    CHECK(summary.at("config").at("seed") == 7);
    CHECK(summary.at("config").at("model").at("kind") == "ghk");
    CHECK(summary.contains("energy"));
}

TEST_CASE("transport command writes the full artifact set") {
    const fs::path out = temp_dir("transport");
    nlohmann::json config = {
        {"command", "transport"},
        {"model", {{"kind", "ghk"}, {"epsilon", 1.0}}},
        {"grid", {{"domain", {0.0, 5.0, 0.0, 5.0}}, {"nx", 64}, {"ny", 64}}},
        {"nu",
         {{"points",
           {{1.875, 1.875}, {3.75, 1.75}, {3.25, 3.75}, {1.25, 4.0}}},
          {"masses", {9.5, 7.25, 4.75, 3.5}}}},
    };
    const int rc = run_experiment(config, "", {}, out.string());
    CHECK(rc == kExitOk);
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "labels.csv"));
    CHECK(fs::exists(out / "rho.csv"));
    nlohmann::json summary;
    std::ifstream(out / "summary.json") >> summary;
    CHECK(summary.at("duality_gap").get<double>() <= 1e-4 * 25.0);
}

TEST_CASE("bad configs exit with the input error code") {
    const fs::path out = temp_dir("bad");
    nlohmann::json config = {{"command", "transport"},
                             {"model", {{"kind", "nope"}}},
                             {"grid", {{"nx", 8}, {"ny", 8}}}};
    CHECK(run_experiment(config, "", {}, out.string()) == kExitInput);
    CHECK(fs::exists(out / "error.json"));
}

TEST_CASE("cell problem command emits the table") {
    const fs::path out = temp_dir("cellprob");
    nlohmann::json config = {{"command", "cell-problem"},
                             {"model", {{"kind", "wfr"}, {"epsilon", 1.0}}}};
    CHECK(run_experiment(config, "", {}, out.string()) == kExitOk);
    std::ifstream csv(out / "cell_problem.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "z,b,b_prime");
    // The first row is the smallest z; B there is close to F(0) = 1.
    std::string first;
    std::getline(csv, first);
    const size_t c1 = first.find(',');
    const size_t c2 = first.find(',', c1 + 1);
    CHECK(std::stod(first.substr(0, c1)) == doctest::Approx(1e-4));
    CHECK(std::stod(first.substr(c1 + 1, c2 - c1 - 1)) == doctest::Approx(1.0).epsilon(1e-2));
}
