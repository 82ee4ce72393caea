#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fkpp/errors.hpp"
#include "fkpp/properties.hpp"

using namespace fkpp;

TEST_CASE("manufactured problem: quadratic example is a valid bistable") {
    const auto mp = manufactured_problem(0.5, 2.0, 2.0, -1.0, 2.0);
    // g = y*'/2 + sqrt(y*) = (1-r^2)(1/sqrt(2) - r): zero at 1/sqrt(2).
    CHECK(mp.spec.s0 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    for (double r = -0.9; r < 0.99; r += 0.1) {
        const double expected =
            (1.0 - r * r) * (1.0 / std::sqrt(2.0) - r);
        CHECK(mp.spec.g(r) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("manufactured recovery at p = 3 (fast-decay side kept admissible)") {
    const auto mp = manufactured_problem(1.0, 2.0, 1.4, -0.5, 3.0);
    const auto result = solve_cstar(mp.spec, 1e-10, 1e-10);
    CHECK(result.c_star == doctest::Approx(-0.5).epsilon(2e-9));
    double worst = 0.0;
    for (std::size_t i = 0; i < result.profile.nodes.size(); ++i) {
        worst = std::max(worst, std::abs(result.profile.values[i] -
                                         mp.y_star(result.profile.nodes[i])));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("manufactured constructor accepts or rejects, never silently") {
    // Slow left lift-off with a strong speed term: the validator decides.
    bool accepted = false, rejected = false;
    try {
        const auto mp = manufactured_problem(1.0, 1.05, 4.0, -3.0, 1.5);
        accepted = true;
        CHECK(mp.spec.s0 > -1.0);
        CHECK(mp.spec.s0 < 1.0);
    } catch (const SignStructureViolation&) {
        rejected = true;
    } catch (const HypothesisGFails&) {
        rejected = true;
    }
    CHECK((accepted || rejected));
}

TEST_CASE("manufactured gamma formulas") {
    CHECK(manufactured_gamma_minus(2.0, 2.0) == doctest::Approx(1.0));
    CHECK(manufactured_gamma_minus(3.3, 1.5) == doctest::Approx(2.2));
    CHECK(manufactured_gamma_plus(3.0, 1.5) == doctest::Approx(2.0));
    CHECK(manufactured_gamma_plus(2.0, 3.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("forward comparison on the cubic family") {
    const auto spec = make_cubic_bistable(0.3);
    const auto strict = check_forward_comparison(spec, -0.6, -0.2, 1e-10);
    CHECK(strict.passed);
    const auto reflexive = check_forward_comparison(spec, -0.4, -0.4, 1e-10);
    CHECK(reflexive.passed);
    CHECK(std::abs(reflexive.margin) < 1e-9);
}

TEST_CASE("backward comparison against the wave") {
    const auto spec = make_cubic_bistable(0.3);
    const double c_star = -std::sqrt(2.0) * 0.3;
    const auto rep = check_backward_comparison(spec, c_star - 0.1, 1e-10);
    CHECK(rep.passed);
    // Degenerate pair: the wave against itself.
    const auto self = check_backward_comparison(spec, c_star, 1e-10);
    CHECK(self.passed);

    const auto mp = manufactured_problem(1.0, 2.0, 1.4, -0.5, 3.0);
    const auto rep3 = check_backward_comparison(mp.spec, -0.55, 1e-10);
    CHECK(rep3.passed);
}

TEST_CASE("envelopes: two-sided window brackets the local coefficient") {
    const auto spec = make_cubic_bistable(0.3);
    const auto result = solve_cstar(spec, 1e-10, 1e-10);
    const auto rep = check_envelopes(spec, result, 0.05);
    CHECK(rep.passed);
    CHECK(rep.margin >= -2e-10);

    // Stationary case: y = p' G with exponent 1 + gamma = alpha.
    const auto dw = make_double_well(1.5);
    const auto dw_result = solve_cstar(dw, 1e-10, 1e-10);
    CHECK(check_envelopes(dw, dw_result, 0.05).passed);
}

TEST_CASE("envelopes: upper bound only when the speed term dominates") {
    const auto mp = manufactured_problem(1.0, 3.3, 2.0, -1.0, 1.5);
    REQUIRE(mp.spec.exponents.has_value());
    CHECK(mp.spec.exponents->gamma_minus == doctest::Approx(2.2));
    CHECK(mp.spec.exponents->gamma_minus > 1.0 / (1.5 - 1.0) - 1e-12);
    const auto result = solve_cstar(mp.spec, 1e-10, 1e-10);
    const auto rep = check_envelopes(mp.spec, result, 0.05);
    CHECK(rep.passed);
    CHECK(rep.context.find("upper-only") != std::string::npos);
}

TEST_CASE("envelope check requires exponents") {
    auto spec = make_cubic_bistable(0.3);
    spec.exponents.reset();
    const auto result = solve_cstar(spec, 1e-10, 1e-10);
    CHECK_THROWS_AS(check_envelopes(spec, result, 0.05), ExponentUnavailable);
}

TEST_CASE("first integral holds for real profiles and fails for corrupted ones") {
    const auto spec = make_cubic_bistable(0.3);
    const auto result = solve_cstar(spec, 1e-10, 1e-10);
    const auto profile = reconstruct(spec, result, 0.0, 1024);
    CHECK(check_first_integral(spec, profile, 1e-6).passed);

    WaveProfile corrupted = profile;
    for (std::size_t j = 0; j < corrupted.u.size(); ++j) {
        corrupted.u[j] += 1e-3 * std::sin(13.0 * corrupted.xi[j]);
    }
    CHECK_FALSE(check_first_integral(spec, corrupted, 1e-6).passed);
}

TEST_CASE("fd residual refines at second order") {
    const auto spec = make_cubic_bistable(0.3);
    const auto result = solve_cstar(spec, 1e-10, 1e-10);
    const auto rep = check_residual_refinement(spec, result, 256);
    CHECK(rep.passed);
}

TEST_CASE("scaling coherence at lambda = 4") {
    CHECK(check_scaling_coherence(0.3).passed);
}

TEST_CASE("manufactured matrix: constructible cells recover, the rest are "
          "rejected as predicted") {
    const auto reports = run_manufactured_matrix();
    CHECK(reports.size() == 12);
    int recovered = 0, rejected = 0;
    for (const auto& rep : reports) {
        CHECK(rep.passed);
        if (rep.context.find("rejected") != std::string::npos) {
            ++rejected;
        } else {
            ++recovered;
        }
    }
    // p = 1.5 admits all four cells, p = 2 only the (2,2) pair; every
    // p = 3 cell and the p = 2 (2.5,3) pair decay too fast at +1.
    CHECK(recovered == 6);
    CHECK(rejected == 6);
}

TEST_CASE("suite aggregates and detects vacuous harnesses") {
    const auto spec = make_cubic_bistable(0.3);
    auto reports = run_suite(spec);
    CHECK(aggregate_pass(reports));
    bool has_negative_control = false;
    for (const auto& rep : reports) {
        if (rep.negative_control) {
            has_negative_control = true;
            CHECK_FALSE(rep.passed);  // controls must fail
        } else {
            CHECK(rep.passed);
        }
    }
    CHECK(has_negative_control);
    // Sorted deterministically by check name.
    for (std::size_t i = 1; i < reports.size(); ++i) {
        CHECK(reports[i - 1].check_name <= reports[i].check_name);
    }
    // A passing negative control poisons the aggregate.
    for (auto& rep : reports) {
        if (rep.negative_control) rep.passed = true;
    }
    CHECK_FALSE(aggregate_pass(reports));
}
