#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "lumen/csv.hpp"
#include "lumen/error.hpp"

namespace lumen {

/// Linear interpolation on an ascending grid, zero outside [front, back].
inline double interpolate_linear(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    if (xs[i] == x) return ys[i];
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

/// CIE colour matching functions on a uniform wavelength grid.
class CmfTable {
public:
    struct Row {
        double wavelength_nm, xbar, ybar, zbar;
    };

    /// Rows are sorted by wavelength; the grid must then be uniform and all
    /// values nonnegative.
    explicit CmfTable(std::vector<Row> rows, std::vector<std::size_t> source_lines = {}) {
        if (rows.size() < 2) throw ValidationError(0, "CMF table needs at least two rows");
        if (source_lines.size() != rows.size()) source_lines.assign(rows.size(), 0);
        std::vector<std::size_t> order(rows.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows[a].wavelength_nm < rows[b].wavelength_nm;
        });

        for (std::size_t k = 0; k < order.size(); ++k) {
            const Row& r = rows[order[k]];
            const std::size_t line = source_lines[order[k]];
            const auto where = [&] {
                return "row at " + csv::format_number(r.wavelength_nm) + " nm";
            };
            if (!(r.wavelength_nm > 0.0) || !std::isfinite(r.wavelength_nm)) {
                throw ValidationError(line, where() + ": wavelength must be positive");
            }
            if (!(r.xbar >= 0.0) || !std::isfinite(r.xbar)) throw ValidationError(line, where() + ": negative xbar");
            if (!(r.ybar >= 0.0) || !std::isfinite(r.ybar)) throw ValidationError(line, where() + ": negative ybar");
            if (!(r.zbar >= 0.0) || !std::isfinite(r.zbar)) throw ValidationError(line, where() + ": negative zbar");
            wavelengths_.push_back(r.wavelength_nm);
            xbar_.push_back(r.xbar);
            ybar_.push_back(r.ybar);
            zbar_.push_back(r.zbar);
        }

        spacing_ = wavelengths_[1] - wavelengths_[0];
        for (std::size_t k = 1; k < wavelengths_.size(); ++k) {
            const double step = wavelengths_[k] - wavelengths_[k - 1];
            if (!(step > 0.0) || std::abs(step - spacing_) > 1e-9 * spacing_) {
                throw ValidationError(source_lines[order[k]],
                                      "non-uniform wavelength grid at " +
                                          csv::format_number(wavelengths_[k]) + " nm (step " +
                                          csv::format_number(step) + ", expected " +
                                          csv::format_number(spacing_) + ")");
            }
        }
    }

    std::size_t size() const { return wavelengths_.size(); }
    double spacing() const { return spacing_; }
    double front() const { return wavelengths_.front(); }
    double back() const { return wavelengths_.back(); }

    std::span<const double> wavelengths() const { return wavelengths_; }
    std::span<const double> xbar() const { return xbar_; }
    std::span<const double> ybar() const { return ybar_; }
    std::span<const double> zbar() const { return zbar_; }

    Row row(std::size_t i) const { return {wavelengths_[i], xbar_[i], ybar_[i], zbar_[i]}; }

    double x_at(double nm) const { return interpolate_linear(wavelengths_, xbar_, nm); }
    double y_at(double nm) const { return interpolate_linear(wavelengths_, ybar_, nm); }
    double z_at(double nm) const { return interpolate_linear(wavelengths_, zbar_, nm); }

    /// Every `stride`-th row starting at `first`, at most `count` rows.
    CmfTable subsample(std::size_t first, std::size_t stride, std::size_t count) const {
        if (stride == 0) throw DomainError("subsample: stride must be >= 1");
        std::vector<Row> rows;
        for (std::size_t i = first; i < size() && rows.size() < count; i += stride) rows.push_back(row(i));
        return CmfTable(std::move(rows));
    }

private:
    std::vector<double> wavelengths_, xbar_, ybar_, zbar_;
    double spacing_ = 0.0;
};

/// Parses `wavelength_nm,xbar,ybar,zbar` CSV.
inline CmfTable load_cmf(std::istream& in) {
    const auto rows = csv::read_numeric(in, {"wavelength_nm", "xbar", "ybar", "zbar"});
    if (rows.size() < 2) throw ParseError(0, "CMF table needs at least two data rows");
    std::vector<CmfTable::Row> table;
    std::vector<std::size_t> lines;
    for (const auto& r : rows) {
        table.push_back({r.values[0], r.values[1], r.values[2], r.values[3]});
        lines.push_back(r.line);
    }
    return CmfTable(std::move(table), std::move(lines));
}

inline CmfTable load_cmf_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open CMF file '" + path + "'");
    return load_cmf(in);
}

}  // namespace lumen
