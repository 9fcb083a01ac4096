#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lumen/cmf.hpp"
#include "lumen/constants.hpp"
#include "lumen/error.hpp"
#include "lumen/quadrature.hpp"
#include "lumen/spectrum.hpp"

namespace lumen {

/// Eye sensitivity weighting V(lambda).
///
/// The analytic models are Gaussians in lambda/1000:
///   photopic  1.019 exp(-285.0 (lambda/1000 - 0.559)^2)
///   scotopic  0.992 exp(-321.9 (lambda/1000 - 0.503)^2)
/// Both are below 1e-12 of their peak outside [200, 1000] nm, which is used
/// as their effective support. A tabulated curve is linearly interpolated
/// and zero outside its table.
class LuminosityFunction {
public:
    enum class Kind { PhotopicAnalytic, ScotopicAnalytic, Tabulated };

    static LuminosityFunction photopic() { return LuminosityFunction(Kind::PhotopicAnalytic); }
    static LuminosityFunction scotopic() { return LuminosityFunction(Kind::ScotopicAnalytic); }

    static LuminosityFunction tabulated(std::vector<double> wavelengths_nm, std::vector<double> values) {
        if (wavelengths_nm.size() != values.size() || wavelengths_nm.size() < 2) {
            throw DomainError("tabulated luminosity: need >= 2 rows of matching length");
        }
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
                throw DomainError("tabulated luminosity: value at index " + std::to_string(i) +
                                  " outside [0, 1]");
            }
            if (i > 0 && !(wavelengths_nm[i] > wavelengths_nm[i - 1])) {
                throw DomainError("tabulated luminosity: wavelengths not ascending");
            }
        }
        LuminosityFunction v(Kind::Tabulated);
        v.table_ = std::make_shared<const Table>(Table{std::move(wavelengths_nm), std::move(values)});
        return v;
    }

    /// The ybar column of a CMF table.
    static LuminosityFunction tabulated(const CmfTable& cmf) {
        return tabulated({cmf.wavelengths().begin(), cmf.wavelengths().end()},
                         {cmf.ybar().begin(), cmf.ybar().end()});
    }

    Kind kind() const { return kind_; }

    double operator()(double wavelength_nm) const {
        switch (kind_) {
            case Kind::PhotopicAnalytic: {
                const double u = wavelength_nm / 1000.0 - 0.559;
                return 1.019 * std::exp(-285.0 * u * u);
            }
            case Kind::ScotopicAnalytic: {
                const double u = wavelength_nm / 1000.0 - 0.503;
                return 0.992 * std::exp(-321.9 * u * u);
            }
            case Kind::Tabulated:
                return interpolate_linear(table_->wavelengths, table_->values, wavelength_nm);
        }
        return 0.0;
    }

    /// Largest value taken anywhere.
    double peak() const {
        switch (kind_) {
            case Kind::PhotopicAnalytic: return 1.019;
            case Kind::ScotopicAnalytic: return 0.992;
            case Kind::Tabulated: return *std::max_element(table_->values.begin(), table_->values.end());
        }
        return 0.0;
    }

    Support support() const {
        if (kind_ == Kind::Tabulated) return {table_->wavelengths.front(), table_->wavelengths.back()};
        return {200.0, 1000.0};
    }

    std::span<const double> breakpoints() const {
        if (kind_ == Kind::Tabulated) return table_->wavelengths;
        return {};
    }

private:
    struct Table {
        std::vector<double> wavelengths;
        std::vector<double> values;
    };

    explicit LuminosityFunction(Kind k) : kind_(k) {}

    Kind kind_;
    std::shared_ptr<const Table> table_;
};

inline double luminosity(const LuminosityFunction& v, double wavelength_nm) {
    detail::require_positive(wavelength_nm, "wavelength", "luminosity");
    return v(wavelength_nm);
}

struct EfficacyResult {
    double per = 0.0;         // lm/W
    double efficiency = 0.0;  // per / 683
};

inline EfficacyResult make_efficacy(double per) { return {per, per / kEfficiencyReference}; }

/// Platinum freezing point used by the pre-1979 candela definition.
inline constexpr double kCandelaCalibrationTemperature = 2042.0;
/// 60 cd/cm^2 expressed in cd/m^2 (lm m^-2 sr^-1).
inline constexpr double kCandelaCalibrationLuminance = 6.0e5;

namespace detail {

inline std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Integral of P(lambda) w(lambda) over [lo, hi] (nm), clipped to the model
/// support and split at every breakpoint of either factor. The result is in
/// P-units times nm. Not defined for Line.
template <class Weight>
double spectral_integral(const SpectrumModel& model, const Weight& weight, double lo, double hi,
                         std::span<const double> weight_breakpoints = {}) {
    if (std::holds_alternative<Line>(model)) {
        throw UnsupportedModelError("spectral_integral: Line spectra are evaluated analytically");
    }
    const Support s = support_of(model);
    const double a = std::max(lo, s.min_nm);
    const double b = std::min(hi, s.max_nm);
    if (!std::isfinite(b)) throw DomainError("spectral_integral: unbounded integration range");
    if (!(a < b)) return 0.0;
    std::vector<double> cuts = detail::merge_breakpoints(breakpoints_of(model), weight_breakpoints);
    if (const auto* g = std::get_if<Gaussian>(&model)) cuts.push_back(g->center_nm);
    return integrate_piecewise(
        [&](double l) { return evaluate_spectrum(model, l) * weight(l); }, a, b, cuts);
}

/// Mechanical equivalent of the lumen from the pre-1979 candela definition:
/// the calibration luminance divided by the V-weighted radiance of a
/// black body at the platinum freezing point.
inline double compute_km(const LuminosityFunction& v,
                         double calibration_luminance = kCandelaCalibrationLuminance) {
    if (v.kind() != LuminosityFunction::Kind::PhotopicAnalytic) {
        throw DomainError("compute_km: the candela calibration is defined for photopic vision only");
    }
    const Support s = v.support();
    const SpectrumModel source = Planck(kCandelaCalibrationTemperature);
    const double weighted = spectral_integral(source, v, s.min_nm, s.max_nm) * kMetersPerNanometer;
    return calibration_luminance / weighted;
}

/// Photometric efficacy ratio K_m * int(P V) / int(P).
///
/// Planck integrates over all wavelengths (closed-form denominator) and
/// ignores the bounds. Line returns K_m V(lambda0). Every other model is
/// integrated over [min_nm, max_nm] clipped to its support.
inline EfficacyResult per(const SpectrumModel& model, const LuminosityFunction& v, double min_nm,
                          double max_nm, double km) {
    if (!(km > 0.0)) throw DomainError("per: K_m must be > 0");

    if (const auto* line = std::get_if<Line>(&model)) {
        if (line->wavelength_nm < min_nm || line->wavelength_nm > max_nm) {
            throw DomainError("per: line wavelength " + csv::format_number(line->wavelength_nm) +
                              " nm outside [" + csv::format_number(min_nm) + ", " +
                              csv::format_number(max_nm) + "]");
        }
        return make_efficacy(km * v(line->wavelength_nm));
    }

    const Support vs = v.support();
    if (const auto* planck = std::get_if<Planck>(&model)) {
        const double numerator =
            spectral_integral(model, v, vs.min_nm, vs.max_nm, v.breakpoints()) * kMetersPerNanometer;
        return make_efficacy(km * numerator / total_planck_radiance(planck->temperature_k));
    }

    if (!(min_nm < max_nm)) throw DomainError("per: require min < max");
    const double denominator = spectral_integral(model, [](double) { return 1.0; }, min_nm, max_nm);
    if (!(denominator > 0.0)) {
        throw ZeroSpectrumError(std::string("per: ") + model_name(model) +
                                " spectrum is identically zero on the interval");
    }
    const double numerator = spectral_integral(model, v, std::max(min_nm, vs.min_nm),
                                               std::min(max_nm, vs.max_nm), v.breakpoints());
    return make_efficacy(km * numerator / denominator);
}

struct SweepPoint {
    double temperature_k;
    double per;
};

struct PerSweep {
    std::vector<SweepPoint> rows;
    std::size_t argmax = 0;

    const SweepPoint& best() const { return rows.at(argmax); }
};

/// PER of Planck(T) for T = t_min, t_min + step, ... <= t_max.
inline PerSweep per_sweep_planck(double t_min, double t_max, double step,
                                 const LuminosityFunction& v, double km) {
    if (!(t_min > 0.0) || !(t_max >= t_min)) throw DomainError("per_sweep_planck: require 0 < T_min <= T_max");
    if (!(step > 0.0)) throw DomainError("per_sweep_planck: step must be > 0");
    const auto count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
    PerSweep sweep;
    sweep.rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_min + static_cast<double>(i) * step;
        sweep.rows.push_back({t, per(Planck(t), v, 0.0, 0.0, km).per});
        if (sweep.rows[i].per > sweep.rows[sweep.argmax].per) sweep.argmax = i;
    }
    return sweep;
}

/// Lumens emitted by a source of the given radiant power (W).
inline double luminous_flux(const SpectrumModel& model, double radiant_power_w,
                            const LuminosityFunction& v, double km, double min_nm, double max_nm) {
    if (!(radiant_power_w >= 0.0)) throw DomainError("luminous_flux: radiant power must be >= 0");
    return radiant_power_w * per(model, v, min_nm, max_nm, km).per;
}

}  // namespace lumen
