#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "lumen/csv.hpp"
#include "lumen/error.hpp"
#include "lumen/spectrum.hpp"

namespace lumen {

/// Parses `wavelength_nm,power` CSV into a sampled spectrum.
inline SampledSpectrum load_spectrum(std::istream& in) {
    const auto rows = csv::read_numeric(in, {"wavelength_nm", "power"});
    if (rows.size() < 4) {
        throw ValidationError(0, "spectrum needs at least 4 samples, got " + std::to_string(rows.size()));
    }
    std::vector<double> wl, power;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double l = rows[i].values[0];
        const double p = rows[i].values[1];
        if (!(l > 0.0)) throw ValidationError(rows[i].line, "wavelength must be positive");
        if (i > 0 && !(l > wl.back())) throw ValidationError(rows[i].line, "wavelengths must be strictly ascending");
        if (!(p >= 0.0)) throw ValidationError(rows[i].line, "power must be nonnegative");
        wl.push_back(l);
        power.push_back(p);
    }
    return SampledSpectrum(std::move(wl), std::move(power));
}

inline SampledSpectrum load_spectrum_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open spectrum file '" + path + "'");
    return load_spectrum(in);
}

}  // namespace lumen
