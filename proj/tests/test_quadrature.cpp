#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fkpp/errors.hpp"
#include "fkpp/interpolate.hpp"
#include "fkpp/quadrature.hpp"

using namespace fkpp;

TEST_CASE("polynomials integrate to machine precision") {
    auto cubic = [](double x) { return x * x * x - 0.3 * x * x - x + 0.3; };
    // Antiderivative x^4/4 - 0.1 x^3 - x^2/2 + 0.3 x.
    auto F = [](double x) {
        return x * x * x * x / 4 - 0.1 * x * x * x - x * x / 2 + 0.3 * x;
    };
    const double exact = F(1.0) - F(-1.0);
    CHECK(integrate(cubic, -1.0, 1.0) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(integrate(cubic, 1.0, -1.0) ==
          doctest::Approx(-exact).epsilon(1e-14));
    CHECK(integrate(cubic, 0.5, 0.5) == 0.0);
}

TEST_CASE("breakpoints split kinked integrands cleanly") {
    auto kinked = [](double x) { return std::abs(x - 0.25); };
    const double exact = (0.75 * 0.75 + 1.25 * 1.25) / 2.0;
    const std::array<double, 1> split{0.25};
    CHECK(integrate(kinked, -1.0, 1.0, {.abs_tol = 1e-12}, split) ==
          doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("integrable endpoint behavior converges") {
    // sqrt has unbounded derivative at 0 but the panels keep subdividing.
    auto f = [](double x) { return std::sqrt(x); };
    CHECK(integrate(f, 0.0, 1.0, {.abs_tol = 1e-11}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("nested tolerances agree within the coarser one") {
    auto f = [](double x) { return std::exp(-x) * std::sin(7 * x); };
    const double coarse = integrate(f, -1.0, 1.0, {.abs_tol = 1e-6});
    const double fine = integrate(f, -1.0, 1.0, {.abs_tol = 1e-12});
    CHECK(std::abs(coarse - fine) <= 1e-6);
}

TEST_CASE("non-integrable singularity fails loudly") {
    auto f = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {.abs_tol = 1e-10, .max_depth = 30}),
                    QuadratureFailure);
}

TEST_CASE("monotone interpolation preserves monotone data") {
    std::vector<double> x{0.0, 0.5, 1.0, 2.0, 3.0};
    std::vector<double> y{0.0, 0.4, 0.5, 0.9, 1.0};
    const auto m = pchip_slopes(x, y);
    double prev = -1.0;
    for (double q = 0.0; q <= 3.0; q += 0.01) {
        const double v = hermite_eval(q, x, y, m);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(hermite_eval(x[i], x, y, m) == doctest::Approx(y[i]));
    }
}

TEST_CASE("hermite derivative matches a finite difference") {
    std::vector<double> x{0.0, 1.0, 2.0};
    std::vector<double> y{0.0, 1.0, 8.0};
    std::vector<double> m{0.0, 3.0, 12.0};  // y = x^3 data
    const double h = 1e-6;
    const double fd =
        (hermite_eval(1.5 + h, x, y, m) - hermite_eval(1.5 - h, x, y, m)) /
        (2 * h);
    CHECK(hermite_eval_deriv(1.5, x, y, m) == doctest::Approx(fd).epsilon(1e-6));
}
