#include <doctest.h>

#include <cmath>
#include <limits>

#include "uot/lbfgs.hpp"

using namespace uot;

TEST_CASE("quadratic bowl converges to the exact minimizer") {
    LbfgsOptions opts;
    opts.grad_tol = 1e-10;
    const LbfgsResult r = lbfgs_minimize(
        [](const std::vector<double>& x, std::vector<double>& g) {
            double f = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                const double c = 1.0 + static_cast<double>(i);
                f += 0.5 * c * (x[i] - 1.0) * (x[i] - 1.0);
                g[i] = c * (x[i] - 1.0);
            }
            return f;
        },
        std::vector<double>(8, -3.0), opts);
    CHECK(r.converged);
    for (double xi : r.x) CHECK(xi == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("Rosenbrock converges to (1, 1)") {
    LbfgsOptions opts;
    opts.max_iter = 2000;
    opts.grad_tol = 1e-8;
    const LbfgsResult r = lbfgs_minimize(
        [](const std::vector<double>& x, std::vector<double>& g) {
            const double a = 1.0 - x[0];
            const double b = x[1] - x[0] * x[0];
            g[0] = -2.0 * a - 400.0 * x[0] * b;
            g[1] = 200.0 * b;
            return a * a + 100.0 * b * b;
        },
        {-1.2, 1.0}, opts);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("line search handles infinite objective regions") {
    // f = -log(1 - x) + x^2 on x < 1, +inf beyond: the search must backtrack.
    LbfgsOptions opts;
    opts.grad_tol = 1e-10;
    const LbfgsResult r = lbfgs_minimize(
        [](const std::vector<double>& x, std::vector<double>& g) {
            if (x[0] >= 1.0) {
                g[0] = 0.0;
                return std::numeric_limits<double>::infinity();
            }
            g[0] = 1.0 / (1.0 - x[0]) + 2.0 * x[0];
            return -std::log(1.0 - x[0]) + x[0] * x[0];
        },
        {0.0}, opts);
    CHECK(r.converged);
    // Stationarity: 1/(1-x) + 2x = 0 has root x = (1 - sqrt(3))/2.
    CHECK(r.x[0] == doctest::Approx((1.0 - std::sqrt(3.0)) / 2.0).epsilon(1e-6));
}
