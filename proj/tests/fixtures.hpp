// Shared test fixtures and reference values. The long constants were frozen
// from independent high-precision computations (mpmath closed forms, RK4,
// adaptive quadrature) rather than from the code under test.
#pragma once

#include "mvjump/model.hpp"

namespace fixtures {

// Fixture A: rho=0.05, mu=0.15, sigma=0.20, one mark (eta=0.10, lambda=1.0),
// T=1, x0=1. Lambda = 0.05, theta = 0.2.
inline mvjump::MarketModel model_a(int grid_n = 2000) {
    mvjump::MarketModel m;
    m.T = 1.0;
    m.x0 = 1.0;
    m.rho = mvjump::Curve::constant(0.05);
    m.mu = mvjump::Curve::constant(0.15);
    m.sigma = mvjump::Curve::constant(0.20);
    m.marks.push_back({mvjump::Curve::constant(0.10), 1.0});
    m.grid_n = grid_n;
    return m;
}

// Fixture B: Fixture A without jump marks. Lambda = 0.04, theta = 0.25.
inline mvjump::MarketModel model_b(int grid_n = 2000) {
    mvjump::MarketModel m = model_a(grid_n);
    m.marks.clear();
    return m;
}

// e^{0.05}: terminal wealth of the pure bond, the frontier vertex.
inline constexpr double kRiskFreeTerminal = 1.0512710963760240397;

// P(0) = e^{-0.1} on Fixture A; phi(0) = -P(0).
inline constexpr double kP0A = 0.9048374180359595732;

// beta realizing target mean 1.2 on Fixture A.
inline constexpr double kBetaMeanA = 1.8717572303971964;

// Frontier variance at M = 1.2 on Fixture A.
inline constexpr double kVarA = 0.09990971637845364;

// E X(T)^2 at beta = kBetaMeanA on Fixture A.
inline constexpr double kM2A = 1.5399097163784536;

// Embedding root for w = 1 on Fixture A, and the implied terminal mean.
inline constexpr double kBetaRiskA = 1.6619724754561090;
inline constexpr double kMeanRiskA = 1.1619724754561090;

// Q(0) and R(0) for (w=1, beta=kBetaRiskA) on Fixture A.
inline constexpr double kQ0A = 0.07334191731456623;
inline constexpr double kR0A = 0.00297237753885798;

// V(0, y0) for (w=1, beta=kBetaRiskA): equals the realized optimal cost.
inline constexpr double kV0A = 0.15267534477002123;

// Optimal control at t=0 for beta = kBetaMeanA: u(0, y0) = v(0, x0), w=1.
inline constexpr double kControl0A = 1.5609411061515510;

// Fixture B values at M=1.2 / w=1.
inline constexpr double kVarB = 0.07788136368622618;
inline constexpr double kBetaMeanB = 1.7236464586811575;
inline constexpr double kBetaRiskB = 1.6932838047198948;
inline constexpr double kPhi0B = -0.8607079764250578;

// E X(T) under the constant policy v = 1 on Fixture A.
inline constexpr double kMeanConstV1 = 1.1538132891280721;

}  // namespace fixtures
