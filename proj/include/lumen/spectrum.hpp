#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lumen/constants.hpp"
#include "lumen/error.hpp"
#include "lumen/spline.hpp"

namespace lumen {

// Public interfaces take wavelengths in nm and temperatures in kelvin.

namespace detail {

// Above this exponent exp() overflows and the result is below the smallest
// representable double anyway.
inline constexpr double kMaxExponent = 700.0;

inline void require_positive(double v, const char* what, const char* op) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(op) + ": " + what + " must be finite and > 0");
    }
}

}  // namespace detail

/// Black-body spectral radiance 2hc^2 / lambda^5 / (exp(hc / lambda k T) - 1)
/// in W m^-2 sr^-1 per metre of wavelength.
inline double planck_radiance(double wavelength_nm, double temperature_k) {
    detail::require_positive(wavelength_nm, "wavelength", "planck_radiance");
    detail::require_positive(temperature_k, "temperature", "planck_radiance");
    using C = PhysicalConstants;
    const double lambda = wavelength_nm * kMetersPerNanometer;
    const double x = C::h * C::c / (lambda * C::k_B * temperature_k);
    if (x > detail::kMaxExponent) return 0.0;
    const double l5 = lambda * lambda * lambda * lambda * lambda;
    return 2.0 * C::h * C::c * C::c / l5 / std::expm1(x);
}

/// Bose-Einstein occupancy 1 / (exp(hbar omega / k T) - 1) of a photon mode.
inline double photon_number_density(double omega_rad_s, double temperature_k) {
    detail::require_positive(omega_rad_s, "angular frequency", "photon_number_density");
    detail::require_positive(temperature_k, "temperature", "photon_number_density");
    using C = PhysicalConstants;
    const double x = C::hbar * omega_rad_s / (C::k_B * temperature_k);
    if (x > detail::kMaxExponent) return 0.0;
    return 1.0 / std::expm1(x);
}

/// Photon-gas energy density per unit angular frequency,
/// (omega^2 / pi^2 c^3) hbar omega n(omega), in J m^-3 (rad/s)^-1.
inline double energy_density_omega(double omega_rad_s, double temperature_k) {
    using C = PhysicalConstants;
    const double n = photon_number_density(omega_rad_s, temperature_k);
    constexpr double pi = std::numbers::pi;
    return omega_rad_s * omega_rad_s / (pi * pi * C::c * C::c * C::c) * C::hbar * omega_rad_s * n;
}

/// Photon-gas energy density per unit wavelength, 8 pi h c / lambda^5 n,
/// in J m^-3 per metre of wavelength.
inline double energy_density_lambda(double wavelength_nm, double temperature_k) {
    detail::require_positive(wavelength_nm, "wavelength", "energy_density_lambda");
    detail::require_positive(temperature_k, "temperature", "energy_density_lambda");
    using C = PhysicalConstants;
    const double lambda = wavelength_nm * kMetersPerNanometer;
    const double x = C::h * C::c / (lambda * C::k_B * temperature_k);
    if (x > detail::kMaxExponent) return 0.0;
    const double l5 = lambda * lambda * lambda * lambda * lambda;
    return 8.0 * std::numbers::pi * C::h * C::c / l5 / std::expm1(x);
}

/// Relative power on a strictly ascending wavelength grid.
class SampledSpectrum {
public:
    SampledSpectrum(std::vector<double> wavelengths_nm, std::vector<double> values)
        : wavelengths_(std::move(wavelengths_nm)), values_(std::move(values)) {
        if (wavelengths_.size() != values_.size()) {
            throw DomainError("sampled spectrum: wavelength and value counts differ");
        }
        if (wavelengths_.size() < 4) {
            throw DomainError("sampled spectrum: at least 4 samples are required");
        }
        for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
            if (!(wavelengths_[i] > 0.0) || !std::isfinite(wavelengths_[i])) {
                throw DomainError("sampled spectrum: wavelength at index " + std::to_string(i) +
                                  " is not a positive finite number");
            }
            if (i > 0 && !(wavelengths_[i] > wavelengths_[i - 1])) {
                throw DomainError("sampled spectrum: wavelengths not strictly ascending at index " +
                                  std::to_string(i));
            }
            if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
                throw DomainError("sampled spectrum: value at index " + std::to_string(i) +
                                  " is negative or not finite");
            }
        }
    }

    std::span<const double> wavelengths() const { return wavelengths_; }
    std::span<const double> values() const { return values_; }
    double front() const { return wavelengths_.front(); }
    double back() const { return wavelengths_.back(); }

private:
    std::vector<double> wavelengths_;
    std::vector<double> values_;
};

inline CubicSpline spline_fit(const SampledSpectrum& data) {
    return CubicSpline(data.wavelengths(), data.values());
}

// Spectrum model alternatives. Constructors enforce the invariants.

struct Planck {
    double temperature_k;
    explicit Planck(double t) : temperature_k(t) {
        detail::require_positive(t, "temperature", "Planck");
    }
};

struct TruncatedPlanck {
    double temperature_k, min_nm, max_nm;
    TruncatedPlanck(double t, double lo, double hi) : temperature_k(t), min_nm(lo), max_nm(hi) {
        detail::require_positive(t, "temperature", "TruncatedPlanck");
        detail::require_positive(lo, "lower wavelength", "TruncatedPlanck");
        if (!(lo < hi) || !std::isfinite(hi)) throw DomainError("TruncatedPlanck: require min < max");
    }
};

struct Flat {
    double min_nm, max_nm;
    Flat(double lo, double hi) : min_nm(lo), max_nm(hi) {
        detail::require_positive(lo, "lower wavelength", "Flat");
        if (!(lo < hi) || !std::isfinite(hi)) throw DomainError("Flat: require min < max");
    }
};

struct Gaussian {
    double center_nm, sigma_nm;
    Gaussian(double center, double sigma) : center_nm(center), sigma_nm(sigma) {
        detail::require_positive(center, "center wavelength", "Gaussian");
        detail::require_positive(sigma, "width", "Gaussian");
    }
};

/// Monochromatic (Dirac delta) source. Handled analytically, never sampled.
struct Line {
    double wavelength_nm;
    explicit Line(double w) : wavelength_nm(w) {
        detail::require_positive(w, "wavelength", "Line");
    }
};

struct Sampled {
    std::shared_ptr<const SampledSpectrum> data;
    std::shared_ptr<const CubicSpline> spline;

    explicit Sampled(SampledSpectrum s)
        : data(std::make_shared<const SampledSpectrum>(std::move(s))),
          spline(std::make_shared<const CubicSpline>(spline_fit(*data))) {}
};

using SpectrumModel = std::variant<Planck, TruncatedPlanck, Flat, Gaussian, Line, Sampled>;

/// Wavelength interval outside which a model is (numerically) zero.
/// Gaussians are cut at 40 sigma, where exp() is below 1e-347.
struct Support {
    double min_nm;
    double max_nm;
};

inline Support support_of(const SpectrumModel& model) {
    return std::visit(
        [](const auto& m) -> Support {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Planck>) {
                return {0.0, std::numeric_limits<double>::infinity()};
            } else if constexpr (std::is_same_v<T, TruncatedPlanck> || std::is_same_v<T, Flat>) {
                return {m.min_nm, m.max_nm};
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                return {std::max(0.0, m.center_nm - 40.0 * m.sigma_nm), m.center_nm + 40.0 * m.sigma_nm};
            } else if constexpr (std::is_same_v<T, Line>) {
                return {m.wavelength_nm, m.wavelength_nm};
            } else {
                return {m.data->front(), m.data->back()};
            }
        },
        model);
}

/// Points where the model is not smooth (spline knots); empty otherwise.
inline std::span<const double> breakpoints_of(const SpectrumModel& model) {
    if (const auto* s = std::get_if<Sampled>(&model)) return s->data->wavelengths();
    return {};
}

/// Relative power density of `model` at `wavelength_nm`.
/// Throws UnsupportedModelError for Line.
inline double evaluate_spectrum(const SpectrumModel& model, double wavelength_nm) {
    detail::require_positive(wavelength_nm, "wavelength", "evaluate_spectrum");
    return std::visit(
        [wavelength_nm](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            const double l = wavelength_nm;
            if constexpr (std::is_same_v<T, Planck>) {
                return planck_radiance(l, m.temperature_k);
            } else if constexpr (std::is_same_v<T, TruncatedPlanck>) {
                return (l < m.min_nm || l > m.max_nm) ? 0.0 : planck_radiance(l, m.temperature_k);
            } else if constexpr (std::is_same_v<T, Flat>) {
                return (l < m.min_nm || l > m.max_nm) ? 0.0 : 1.0;
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                const double u = (l - m.center_nm) / m.sigma_nm;
                return std::exp(-0.5 * u * u);
            } else if constexpr (std::is_same_v<T, Line>) {
                throw UnsupportedModelError(
                    "evaluate_spectrum: a Line spectrum is a delta function and has no pointwise value");
            } else {
                if (!m.spline->contains(l)) return 0.0;
                return std::max(0.0, (*m.spline)(l));
            }
        },
        model);
}

inline const char* model_name(const SpectrumModel& model) {
    constexpr const char* names[] = {"Planck", "TruncatedPlanck", "Flat", "Gaussian", "Line", "Sampled"};
    return names[model.index()];
}

}  // namespace lumen
