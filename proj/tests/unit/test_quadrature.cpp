#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lumen/quadrature.hpp"
#include "lumen/spectrum.hpp"

namespace {

using namespace lumen;

// Closed form 10 sqrt(2 pi) of a sigma = 10 nm Gaussian; tails beyond
// 24 sigma are below 1e-100.
const double kGaussianArea = 10.0 * std::sqrt(2.0 * std::numbers::pi);

double numeric_total_radiance(double t) {
    return integrate([t](double l) { return planck_radiance(l, t); }, {10.0, 1e6, 1e-8, 40}) *
           kMetersPerNanometer;
}

TEST(Integrate, PolynomialIsExact) {
    EXPECT_NEAR(integrate([](double x) { return x * x; }, {0.0, 1.0}), 1.0 / 3.0, 1e-10);
}

TEST(Integrate, GaussianClosedForm) {
    const IntegrationSpec spec{300.0, 900.0, 1e-8, 40};
    const double v = integrate([](double l) { return std::exp(-0.5 * std::pow((l - 555.0) / 10.0, 2)); }, spec);
    EXPECT_NEAR(v / kGaussianArea, 1.0, spec.rel_tol);
}

TEST(Integrate, PlanckAgainstClosedForm) {
    EXPECT_NEAR(numeric_total_radiance(2042.0) / total_planck_radiance(2042.0), 1.0, 1e-4);
    EXPECT_NEAR(numeric_total_radiance(6000.0) / total_planck_radiance(6000.0), 1.0, 1e-4);
}

TEST(Integrate, StefanBoltzmann) {
    for (double t : {1800.0, 3000.0, 6000.0, 9300.0}) {
        const double ratio = numeric_total_radiance(t) / total_planck_radiance(t);
        EXPECT_GE(ratio, 1.0 - 1e-4) << t;
        EXPECT_LE(ratio, 1.0 + 1e-4) << t;
    }
}

TEST(Integrate, ValidatesSpec) {
    auto f = [](double) { return 1.0; };
    EXPECT_THROW(integrate(f, {1.0, 1.0}), DomainError);
    EXPECT_THROW(integrate(f, {0.0, 1.0, 0.0, 40}), DomainError);
    EXPECT_THROW(integrate(f, {0.0, 1.0, 1.0, 40}), DomainError);
    EXPECT_THROW(integrate(f, {0.0, 1.0, 1e-8, 0}), DomainError);
}

TEST(Integrate, ReportsNonConvergence) {
    // A jump that no bisection point hits cannot meet a halving error budget.
    auto step = [](double x) { return x < 1.0 / std::numbers::pi ? 0.0 : 1.0; };
    EXPECT_THROW(integrate(step, {0.0, 1.0, 1e-10, 12}), ConvergenceError);
}

TEST(Integrate, ZeroIntegrand) {
    EXPECT_EQ(integrate([](double) { return 0.0; }, {0.0, 5.0}), 0.0);
}

struct SplineNoise {
    CubicSpline s;
    explicit SplineNoise(std::mt19937_64& rng)
        : s([&] {
              std::uniform_real_distribution<double> v(0.0, 1.0);
              std::vector<double> x, y;
              for (int i = 0; i <= 40; ++i) {
                  x.push_back(400.0 + 10.0 * i);
                  y.push_back(v(rng));
              }
              return CubicSpline(x, y);
          }()) {}
    double operator()(double l) const { return s(l); }
};

TEST(Integrate, Linearity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int k = 0; k < 10; ++k) {
        const SplineNoise f(rng), g(rng);
        const double alpha = coef(rng), beta = coef(rng);
        const IntegrationSpec spec{400.0, 800.0, 1e-8, 40};
        const double lhs = integrate([&](double l) { return alpha * f(l) + beta * g(l); }, spec);
        const double rhs = alpha * integrate(f, spec) + beta * integrate(g, spec);
        const double scale = std::abs(alpha) * integrate([&](double l) { return std::abs(f(l)); }, spec) +
                             std::abs(beta) * integrate([&](double l) { return std::abs(g(l)); }, spec);
        EXPECT_NEAR(lhs, rhs, 2.0 * spec.rel_tol * scale);
    }
}

TEST(Integrate, IntervalAdditivity) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> cut(410.0, 790.0);
    for (int k = 0; k < 10; ++k) {
        const SplineNoise f(rng);
        const double mid = cut(rng);
        const double whole = integrate(f, {400.0, 800.0});
        const double parts = integrate(f, {400.0, mid}) + integrate(f, {mid, 800.0});
        EXPECT_NEAR(whole, parts, 2.0 * 1e-8 * std::abs(whole));
    }
}

TEST(IntegratePiecewise, SplitsAtBreakpoints) {
    // Piecewise linear with kinks at 0.3 and 0.7: Simpson is exact on
    // every piece once the kinks are cuts.
    auto ramp = [](double x) { return std::clamp(x - 0.3, 0.0, 0.4); };
    const std::vector<double> edges{0.7, 0.3, 5.0};
    EXPECT_NEAR(integrate_piecewise(ramp, 0.0, 1.0, edges), 0.08 + 0.12, 1e-15);
    EXPECT_EQ(integrate_piecewise(ramp, 1.0, 1.0, edges), 0.0);
}

TEST(TotalPlanckRadiance, ClosedForm) {
    using C = PhysicalConstants;
    const double t = 2042.0;
    const double expected = 2.0 * std::pow(std::numbers::pi, 4) / 15.0 * std::pow(C::k_B * t, 4) /
                            (std::pow(C::h, 3) * C::c * C::c);
    EXPECT_NEAR(total_planck_radiance(t) / expected, 1.0, 1e-14);
    // Extended-precision value of the same expression.
    EXPECT_NEAR(total_planck_radiance(t) / 313823.03266838399099, 1.0, 1e-13);
}

TEST(TotalPlanckRadiance, FourthPowerScaling) {
    EXPECT_EQ(total_planck_radiance(4084.0), 16.0 * total_planck_radiance(2042.0));
    EXPECT_THROW(total_planck_radiance(0.0), DomainError);
}

}  // namespace
