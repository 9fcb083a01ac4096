#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "lumen/constants.hpp"
#include "lumen/error.hpp"

namespace lumen {

struct IntegrationSpec {
    double a = 0.0;
    double b = 1.0;
    double rel_tol = 1e-8;
    int max_depth = 40;

    void validate() const {
        if (!(a < b)) throw DomainError("integrate: require a < b");
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("integrate: require 0 < rel_tol < 1");
        if (max_depth < 1) throw DomainError("integrate: require max_depth >= 1");
    }
};

namespace detail {

// Number of equal panels the interval is cut into before adaptation starts.
// A single 5-point Simpson estimate can step over a narrow peak entirely.
inline constexpr int kInitialPanels = 16;

template <class F>
struct AdaptiveSimpson {
    const F& f;
    int max_depth;
    bool exhausted = false;

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double refine(double a, double b, double fa, double fm, double fb, double whole, double eps,
                  int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * eps) {
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth) {
            exhausted = true;
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
    }
};

}  // namespace detail

/// Adaptive Simpson quadrature of `f` over [spec.a, spec.b].
///
/// The error budget is `rel_tol` times the magnitude of a first coarse
/// estimate of the integral. Throws ConvergenceError when a subinterval
/// reaches `max_depth` halvings without meeting its share of the budget.
template <class F>
double integrate(const F& f, const IntegrationSpec& spec) {
    spec.validate();
    const int panels = detail::kInitialPanels;
    const double width = (spec.b - spec.a) / panels;

    std::vector<double> xs(2 * panels + 1), fs(2 * panels + 1);
    for (int i = 0; i <= 2 * panels; ++i) {
        xs[i] = (i == 2 * panels) ? spec.b : spec.a + 0.5 * width * i;
        fs[i] = f(xs[i]);
    }
    double coarse = 0.0;
    std::vector<double> whole(panels);
    for (int p = 0; p < panels; ++p) {
        whole[p] = detail::AdaptiveSimpson<F>::simpson(xs[2 * p], xs[2 * p + 2], fs[2 * p],
                                                       fs[2 * p + 1], fs[2 * p + 2]);
        coarse += std::abs(whole[p]);
    }
    if (coarse == 0.0) return 0.0;

    const double eps = spec.rel_tol * coarse / panels;
    detail::AdaptiveSimpson<F> engine{f, spec.max_depth};
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        total += engine.refine(xs[2 * p], xs[2 * p + 2], fs[2 * p], fs[2 * p + 1], fs[2 * p + 2],
                               whole[p], eps, 1);
    }
    if (engine.exhausted) {
        throw ConvergenceError("integrate: max_depth " + std::to_string(spec.max_depth) +
                               " exhausted on [" + std::to_string(spec.a) + ", " +
                               std::to_string(spec.b) + "]");
    }
    return total;
}

/// Integrates over [a, b] split at every breakpoint inside the interval.
/// Breakpoints are where the integrand is only piecewise smooth (table
/// knots, support edges).
template <class F>
double integrate_piecewise(const F& f, double a, double b, std::span<const double> breakpoints,
                           double rel_tol = 1e-8, int max_depth = 40) {
    if (!(a < b)) return 0.0;
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += integrate(f, IntegrationSpec{cuts[i], cuts[i + 1], rel_tol, max_depth});
    }
    return total;
}

/// Closed form of the black-body radiance integrated over all wavelengths,
/// (2 pi^4 / 15) k^4 T^4 / (h^3 c^2), in W m^-2 sr^-1.
inline double total_planck_radiance(double temperature_k) {
    if (!(temperature_k > 0.0)) throw DomainError("total_planck_radiance: T must be > 0");
    using C = PhysicalConstants;
    constexpr double pi = std::numbers::pi;
    const double kt = C::k_B * temperature_k;
    return 2.0 * std::pow(pi, 4) / 15.0 * (kt * kt * kt * kt) / (C::h * C::h * C::h * C::c * C::c);
}

}  // namespace lumen
