#pragma once

#include <numbers>

namespace lumen {

/// CODATA 2018 exact SI values.
struct PhysicalConstants {
    static constexpr double h = 6.62607015e-34;     // J s
    static constexpr double c = 2.99792458e8;       // m / s
    static constexpr double k_B = 1.380649e-23;     // J / K
    static constexpr double hbar = h / (2.0 * std::numbers::pi);
};

inline constexpr double kMetersPerNanometer = 1e-9;

/// Photometric constant adopted by the SI (lm/W at 540 THz).
inline constexpr double kAdoptedKm = 683.0;

/// Reference for dimensionless efficiency figures.
inline constexpr double kEfficiencyReference = 683.0;

}  // namespace lumen
