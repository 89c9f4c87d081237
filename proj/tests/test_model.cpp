#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "mvjump/errors.hpp"
#include "mvjump/model.hpp"

using namespace mvjump;

namespace {

Errc validation_error(const MarketModel& m) {
    try {
        validate_model(m);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected validation to throw");
    return Errc::BadConfig;
}

}  // namespace

TEST_CASE("curve: constant and sampled evaluation") {
    const Curve c = Curve::constant(0.3);
    CHECK(c(0.0) == 0.3);
    CHECK(c(123.0) == 0.3);

    const Curve s = Curve::sampled({1.0, 2.0, 4.0}, 1.0);
    CHECK(s(0.0) == 1.0);
    CHECK(s(0.5) == 2.0);
    CHECK(s(1.0) == 4.0);
    CHECK(s(0.25) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s(-1.0) == 1.0);  // clamped
    CHECK(s(2.0) == 4.0);

    CHECK_THROWS_AS(Curve::sampled({1.0}, 1.0), Error);
    CHECK_THROWS_AS(Curve::sampled({1.0, std::nan("")}, 1.0), Error);
}

TEST_CASE("validate_model accepts fixture A and rejects each violation") {
    CHECK_NOTHROW(validate_model(fixtures::model_a()));

    MarketModel m = fixtures::model_a();
    m.mu = Curve::constant(0.05);  // mu == rho
    CHECK(validation_error(m) == Errc::DriftDominance);

    m = fixtures::model_b();
    m.sigma = Curve::constant(0.0);  // Lambda == 0
    CHECK(validation_error(m) == Errc::DegenerateNoise);

    m = fixtures::model_a();
    m.marks[0].intensity = -1.0;
    CHECK(validation_error(m) == Errc::BadIntensity);

    m = fixtures::model_a();
    m.T = 0.0;
    CHECK(validation_error(m) == Errc::BadHorizon);

    m = fixtures::model_a();
    m.x0 = -2.0;
    CHECK(validation_error(m) == Errc::BadWealth);

    m = fixtures::model_a();
    m.rho = Curve::constant(0.0);
    CHECK(validation_error(m) == Errc::DriftDominance);
}

TEST_CASE("validation catches a violation at an interior grid node") {
    MarketModel m = fixtures::model_a(100);
    std::vector<double> mu(101, 0.15);
    mu[50] = 0.04;  // dips below rho mid-horizon only
    m.mu = Curve::sampled(std::move(mu), m.T);
    CHECK(validation_error(m) == Errc::DriftDominance);
}

TEST_CASE("big_lambda and theta") {
    const MarketModel a = fixtures::model_a();
    CHECK(big_lambda(a, 0.3) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(theta(a, 0.7) == doctest::Approx(0.2).epsilon(1e-15));

    const MarketModel b = fixtures::model_b();
    CHECK(big_lambda(b, 0.5) == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(theta(b, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

    MarketModel m = fixtures::model_b();
    m.sigma = Curve::constant(0.0);
    m.marks.push_back({Curve::constant(0.5), 2.0});
    CHECK(big_lambda(m, 0.1) == doctest::Approx(0.5).epsilon(1e-15));

    // constant coefficients make theta constant in time
    for (double t : {0.0, 0.33, 0.71, 1.0}) CHECK(theta(a, t) == theta(a, 0.0));
}

TEST_CASE("theta * Lambda == (mu - rho)^2 at every grid node") {
    for (const MarketModel& m : {fixtures::model_a(500), fixtures::model_b(500)}) {
        for (int i = 0; i <= m.grid_n; ++i) {
            const double t = m.grid_time(i);
            const double d = m.mu(t) - m.rho(t);
            CHECK(theta(m, t) * big_lambda(m, t) == doctest::Approx(d * d).epsilon(1e-14));
        }
    }
}

TEST_CASE("big_lambda is monotone in intensities and |eta|") {
    MarketModel m = fixtures::model_a();
    const double base = big_lambda(m, 0.5);
    m.marks[0].intensity = 2.0;
    CHECK(big_lambda(m, 0.5) > base);
    m.marks[0].intensity = 1.0;
    m.marks[0].eta = Curve::constant(-0.2);  // |eta| grew; sign irrelevant
    CHECK(big_lambda(m, 0.5) > base);
}

TEST_CASE("removing all marks reproduces the pure-diffusion Lambda exactly") {
    MarketModel m = fixtures::model_a();
    m.marks.clear();
    const double s = m.sigma(0.4);
    CHECK(big_lambda(m, 0.4) == s * s);
}

TEST_CASE("integrate: constants, linear integrands, smooth oracle") {
    const MarketModel m = fixtures::model_a();
    CHECK(integrate(m, [](double) { return 0.2; }, 0.0, 1.0) ==
          doctest::Approx(0.2).epsilon(1e-14));
    CHECK(integrate(m, [](double t) { return t; }, 0.0, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-13));

    // e^t sampled at 1001 points; trapezoid against the exact antiderivative.
    std::vector<double> samples(1001);
    for (int i = 0; i <= 1000; ++i) samples[i] = std::exp(i / 1000.0);
    const Curve expc = Curve::sampled(std::move(samples), 1.0);
    CHECK(integrate(m, expc, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-6));

    CHECK_THROWS_AS(integrate(m, [](double) { return 1.0; }, 0.7, 0.2), Error);
}

TEST_CASE("integrate is additive over grid-aligned subintervals") {
    const MarketModel m = fixtures::model_a(200);
    auto f = [](double t) { return 0.1 + 0.3 * t * t; };
    std::mt19937 gen(99);
    std::uniform_int_distribution<int> node(0, 200);
    for (int trial = 0; trial < 50; ++trial) {
        int i = node(gen), j = node(gen), k = node(gen);
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
        const double a = m.grid_time(i), b = m.grid_time(j), c = m.grid_time(k);
        const double whole = integrate(m, f, a, c);
        const double split = integrate(m, f, a, b) + integrate(m, f, b, c);
        CHECK(whole == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("cumulative integrals agree with integrate at grid nodes") {
    const MarketModel m = fixtures::model_a(250);
    auto f = [](double t) { return 0.05 + 0.2 * t; };
    const Curve pre = cumulative_from_zero(m, f);
    const Curve suf = cumulative_to_horizon(m, f);
    for (int i : {0, 13, 125, 249, 250}) {
        const double t = m.grid_time(i);
        CHECK(pre(t) == doctest::Approx(integrate(m, f, 0.0, t)).epsilon(1e-13));
        CHECK(suf(t) == doctest::Approx(integrate(m, f, t, m.T)).epsilon(1e-13));
    }
}
