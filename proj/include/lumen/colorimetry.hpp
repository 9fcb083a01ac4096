#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lumen/cmf.hpp"
#include "lumen/error.hpp"
#include "lumen/photometry.hpp"
#include "lumen/spectrum.hpp"

namespace lumen {

struct Tristimulus {
    double X = 0.0, Y = 0.0, Z = 0.0;

    double sum() const { return X + Y + Z; }
    Tristimulus operator*(double a) const { return {X * a, Y * a, Z * a}; }
    Tristimulus operator+(const Tristimulus& o) const { return {X + o.X, Y + o.Y, Z + o.Z}; }
};

struct Chromaticity {
    double x = 0.0, y = 0.0;
};

/// K_m-scaled CIE tristimulus values of `model` over [min_nm, max_nm]
/// intersected with the table range. Line sources use the table values at
/// the line wavelength.
inline Tristimulus tristimulus(const SpectrumModel& model, const CmfTable& cmf, double km, double min_nm,
                               double max_nm) {
    if (!(km > 0.0)) throw DomainError("tristimulus: K_m must be > 0");
    if (!(min_nm <= max_nm)) throw DomainError("tristimulus: require min <= max");

    Tristimulus t;
    if (const auto* line = std::get_if<Line>(&model)) {
        const double l = line->wavelength_nm;
        if (l < min_nm || l > max_nm) throw DomainError("tristimulus: line wavelength outside the interval");
        t = {km * cmf.x_at(l), km * cmf.y_at(l), km * cmf.z_at(l)};
    } else {
        const double lo = std::max(min_nm, cmf.front());
        const double hi = std::min(max_nm, cmf.back());
        const auto knots = cmf.wavelengths();
        t.X = km * spectral_integral(model, [&](double l) { return cmf.x_at(l); }, lo, hi, knots);
        t.Y = km * spectral_integral(model, [&](double l) { return cmf.y_at(l); }, lo, hi, knots);
        t.Z = km * spectral_integral(model, [&](double l) { return cmf.z_at(l); }, lo, hi, knots);
    }
    if (!(t.sum() > 0.0)) {
        throw ZeroSpectrumError(std::string("tristimulus: ") + model_name(model) +
                                " spectrum has no overlap with the colour matching functions");
    }
    return t;
}

inline Chromaticity chromaticity(const Tristimulus& t) {
    const double s = t.sum();
    if (!(s > 0.0)) throw ZeroSpectrumError("chromaticity: X + Y + Z must be > 0");
    return {t.X / s, t.Y / s};
}

/// Chromaticity of each monochromatic table wavelength, in wavelength order.
/// Rows whose CMFs are all zero have no chromaticity and are skipped.
inline std::vector<Chromaticity> spectral_locus(const CmfTable& cmf) {
    std::vector<Chromaticity> locus;
    locus.reserve(cmf.size());
    for (std::size_t i = 0; i < cmf.size(); ++i) {
        const auto r = cmf.row(i);
        const double s = r.xbar + r.ybar + r.zbar;
        if (s > 0.0) locus.push_back({r.xbar / s, r.ybar / s});
    }
    return locus;
}

struct LocusPoint {
    double temperature_k;
    Chromaticity xy;
};

/// Black-body chromaticity for T = t_min, t_min + step, ... <= t_max.
inline std::vector<LocusPoint> planckian_locus(double t_min, double t_max, double step, const CmfTable& cmf) {
    if (!(t_min > 0.0) || !(t_max >= t_min)) throw DomainError("planckian_locus: require 0 < T_min <= T_max");
    if (!(step > 0.0)) throw DomainError("planckian_locus: step must be > 0");
    const auto count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
    std::vector<LocusPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = t_min + static_cast<double>(i) * step;
        out.push_back({t, chromaticity(tristimulus(Planck(t), cmf, 1.0, cmf.front(), cmf.back()))});
    }
    return out;
}

/// The region bounded by the spectral locus and the purple line.
///
/// Membership uses the even-odd crossing rule; points on an edge count as
/// inside.
class GamutPolygon {
public:
    explicit GamutPolygon(const CmfTable& cmf) : vertices_(spectral_locus(cmf)) {
        if (vertices_.size() < 3) throw DomainError("gamut: fewer than three locus points");
    }

    std::span<const Chromaticity> vertices() const { return vertices_; }

    bool contains(const Chromaticity& p) const {
        const std::size_t n = vertices_.size();
        bool inside = false;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const auto& a = vertices_[j];
            const auto& b = vertices_[i];
            if (on_segment(p, a, b)) return true;
            if ((b.y > p.y) != (a.y > p.y)) {
                const double x_cross = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
                if (p.x < x_cross) inside = !inside;
            }
        }
        return inside;
    }

private:
    static bool on_segment(const Chromaticity& p, const Chromaticity& a, const Chromaticity& b) {
        constexpr double tol = 1e-12;
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len2 = dx * dx + dy * dy;
        if (len2 == 0.0) return std::hypot(p.x - a.x, p.y - a.y) <= tol;
        const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
        return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy)) <= tol;
    }

    std::vector<Chromaticity> vertices_;
};

inline bool in_gamut(const Chromaticity& p, const CmfTable& cmf) { return GamutPolygon(cmf).contains(p); }

}  // namespace lumen
