#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lumen/error.hpp"

namespace lumen {

/// Natural cubic spline (zero second derivative at both ends).
///
/// On interval i the interpolant is
///   s(x) = a[i] + b[i] t + c[i] t^2 + d[i] t^3,   t = x - knots[i],
/// with a[i] equal to the i-th data value, so knots are reproduced exactly.
/// Evaluation outside [front, back] extrapolates the end polynomials; callers
/// that need zero-extension check `contains()` first.
class CubicSpline {
public:
    struct Coefficients {
        double a, b, c, d;
    };

    CubicSpline(std::span<const double> x, std::span<const double> y) {
        const std::size_t n = x.size();
        if (n != y.size()) {
            throw DomainError("spline: knot and value arrays differ in length");
        }
        if (n < 4) {
            throw DomainError("spline: at least 4 knots are required, got " + std::to_string(n));
        }
        for (std::size_t i = 1; i < n; ++i) {
            if (!(x[i] > x[i - 1])) {
                throw DomainError("spline: knots must be strictly ascending (index " +
                                  std::to_string(i) + ")");
            }
        }
        knots_.assign(x.begin(), x.end());

        // Tridiagonal system for the second-derivative coefficients c[1..n-2].
        std::vector<double> h(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

        std::vector<double> c(n, 0.0);
        std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double lower = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 3.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
            // Forward elimination against row i-1 (Thomas algorithm).
            const double m = lower / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            c[i] = (rhs[i] - upper[i] * c[i + 1]) / diag[i];
        }

        coeffs_.resize(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double b = (y[i + 1] - y[i]) / h[i] - h[i] * (c[i + 1] + 2.0 * c[i]) / 3.0;
            const double d = (c[i + 1] - c[i]) / (3.0 * h[i]);
            coeffs_[i] = {y[i], b, c[i], d};
        }
        last_value_ = y[n - 1];
    }

    double operator()(double x) const {
        if (x == knots_.back()) return last_value_;
        const std::size_t i = interval(x);
        const auto& k = coeffs_[i];
        const double t = x - knots_[i];
        return k.a + t * (k.b + t * (k.c + t * k.d));
    }

    bool contains(double x) const { return x >= knots_.front() && x <= knots_.back(); }

    std::span<const double> knots() const { return knots_; }
    std::span<const Coefficients> coefficients() const { return coeffs_; }

private:
    std::size_t interval(double x) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
        if (it == knots_.begin()) return 0;
        const auto i = static_cast<std::size_t>(it - knots_.begin()) - 1;
        return std::min(i, coeffs_.size() - 1);
    }

    std::vector<double> knots_;
    std::vector<Coefficients> coeffs_;
    double last_value_ = 0.0;
};

}  // namespace lumen
