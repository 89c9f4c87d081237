#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mvjump/analytic.hpp"
#include "mvjump/errors.hpp"
#include "mvjump/ode.hpp"

using namespace mvjump;

TEST_CASE("zero dynamics keeps the terminal value") {
    const Curve c = ode_numeric_oracle({[](double) { return 0.0; }, {}}, 1.0, 1.0, 100);
    CHECK(c(0.0) == 1.0);
    CHECK(c(0.37) == 1.0);
    CHECK(c(1.0) == 1.0);
}

TEST_CASE("RK4 matches the exponential closed form for P on fixture A") {
    const MarketModel m = fixtures::model_a();
    const auto dpp = solve_dpp_coefficients(m, 1.0, fixtures::kBetaRiskA);
    const Curve numeric = ode_numeric_oracle(
        {[&m](double t) { return theta(m, t) - 2.0 * m.rho(t); }, {}}, 1.0, m.T, 10000);
    double sup = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double t = m.T * i / 10000.0;
        sup = std::max(sup, std::abs(numeric(t) - dpp.P(t)));
    }
    CHECK(sup <= 1e-8);
    CHECK(numeric(0.0) == doctest::Approx(fixtures::kP0A).epsilon(1e-12));
}

TEST_CASE("RK4 on the adjoint slope ODE equals -P pointwise") {
    const MarketModel m = fixtures::model_a();
    const auto dpp = solve_dpp_coefficients(m, 1.0, 1.0);
    const Curve numeric = ode_numeric_oracle(
        {[&m](double t) { return theta(m, t) - 2.0 * m.rho(t); }, {}}, -1.0, m.T, 10000);
    double sup = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double t = m.T * i / 10000.0;
        sup = std::max(sup, std::abs(numeric(t) + dpp.P(t)));
    }
    CHECK(sup <= 1e-8);
}

TEST_CASE("oracle rejects bad step counts and reports explosions") {
    CHECK_THROWS_AS(ode_numeric_oracle({[](double) { return 0.0; }, {}}, 1.0, 1.0, 1), Error);
    try {
        // x' = -1e9 x backward from 1 explodes immediately at this step size.
        ode_numeric_oracle({[](double) { return -1e9; }, {}}, 1.0, 1.0, 100);
        FAIL("expected NonFinite");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonFinite);
    }
}

TEST_CASE("rk4_endpoint integrates a known linear problem") {
    // x' = -x + 1, x(0) = 0 => x(t) = 1 - e^{-t}.
    const double x1 = rk4_endpoint([](double, double x) { return 1.0 - x; }, 0.0, 1.0, 0.0, 1000);
    CHECK(x1 == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}
