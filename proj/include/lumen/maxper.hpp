#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "lumen/cmf.hpp"
#include "lumen/colorimetry.hpp"
#include "lumen/error.hpp"
#include "lumen/simplex.hpp"

namespace lumen {

/// Discretised maximum-efficacy problem at fixed chromaticity.
///
///   maximize   sum_i c_i P_i,          c_i = K_m ybar_i
///   subject to delta sum_i P_i = 1
///              sum_i P_i (x_c s_i - xbar_i) = 0
///              sum_i P_i (y_c s_i - ybar_i) = 0,   s_i = xbar_i + ybar_i + zbar_i
///              P_i >= 0
class LpProblem {
public:
    LpProblem(std::vector<double> wavelengths_nm, std::vector<double> objective,
              std::vector<std::vector<double>> constraints, std::vector<double> rhs, double delta_nm)
        : wavelengths_(std::move(wavelengths_nm)),
          objective_(std::move(objective)),
          constraints_(std::move(constraints)),
          rhs_(std::move(rhs)),
          delta_(delta_nm) {
        const std::size_t n = objective_.size();
        if (n < 4) throw DomainError("LpProblem: at least 4 wavelengths are required");
        if (wavelengths_.size() != n) throw DomainError("LpProblem: one wavelength per variable");
        if (constraints_.size() != 3 || rhs_.size() != 3) {
            throw DomainError("LpProblem: exactly three equality constraints are required");
        }
        for (const auto& row : constraints_) {
            if (row.size() != n) throw DomainError("LpProblem: constraint row length mismatch");
        }
        if (rhs_[0] != 1.0 || rhs_[1] != 0.0 || rhs_[2] != 0.0) {
            throw DomainError("LpProblem: right-hand side must be (1, 0, 0)");
        }
        if (!(delta_ > 0.0)) throw DomainError("LpProblem: wavelength step must be > 0");
    }

    std::size_t size() const { return objective_.size(); }
    double delta_nm() const { return delta_; }
    const std::vector<double>& wavelengths() const { return wavelengths_; }
    const std::vector<double>& objective() const { return objective_; }
    const std::vector<std::vector<double>>& constraints() const { return constraints_; }
    const std::vector<double>& rhs() const { return rhs_; }

    StandardFormLp standard_form() const { return {constraints_, rhs_, objective_}; }

private:
    std::vector<double> wavelengths_;
    std::vector<double> objective_;
    std::vector<std::vector<double>> constraints_;
    std::vector<double> rhs_;
    double delta_;
};

struct SpectralLine {
    double wavelength_nm;
    double weight;  // P_i, per nm, with delta * sum(weight) = 1
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;  // lm/W
    std::vector<SpectralLine> support;
    std::size_t pivots = 0;
};

/// Relative threshold separating basis zeros from reported lines.
inline constexpr double kSupportThreshold = 1e-9;

/// Builds the LP on every (delta / spacing)-th table wavelength.
inline LpProblem build_problem(const Chromaticity& target, const CmfTable& cmf, double km, double delta_nm) {
    // Targets with x + y > 1 are accepted and come out infeasible.
    if (!(target.x >= 0.0 && target.y >= 0.0 && std::isfinite(target.x + target.y))) {
        throw DomainError("build_problem: target coordinates must be finite and >= 0");
    }
    if (!(km > 0.0)) throw DomainError("build_problem: K_m must be > 0");
    const double ratio = delta_nm / cmf.spacing();
    const double stride_f = std::round(ratio);
    if (!(delta_nm > 0.0) || stride_f < 1.0 || std::abs(ratio - stride_f) > 1e-9 * ratio) {
        throw DomainError("build_problem: wavelength step " + csv::format_number(delta_nm) +
                          " nm is not a multiple of the table spacing " + csv::format_number(cmf.spacing()) +
                          " nm");
    }
    const auto stride = static_cast<std::size_t>(stride_f);

    std::vector<double> wl, c;
    std::vector<std::vector<double>> a(3);
    for (std::size_t i = 0; i < cmf.size(); i += stride) {
        const auto r = cmf.row(i);
        const double s = r.xbar + r.ybar + r.zbar;
        wl.push_back(r.wavelength_nm);
        c.push_back(km * r.ybar);
        a[0].push_back(delta_nm);
        a[1].push_back(target.x * s - r.xbar);
        a[2].push_back(target.y * s - r.ybar);
    }
    return LpProblem(std::move(wl), std::move(c), std::move(a), {1.0, 0.0, 0.0}, delta_nm);
}

/// Solves the problem; the objective is reported as delta * sum(c_i P_i),
/// the efficacy of the optimal line spectrum.
inline LpSolution simplex_solve(const LpProblem& p) {
    const SimplexResult r = solve_simplex(p.standard_form());
    LpSolution out;
    out.status = r.status;
    out.pivots = r.pivots;
    if (r.status != LpStatus::Optimal) return out;

    out.objective_value = p.delta_nm() * r.objective;
    const double peak = *std::max_element(r.x.begin(), r.x.end());
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        if (r.x[i] > kSupportThreshold * peak) out.support.push_back({p.wavelengths()[i], r.x[i]});
    }
    return out;
}

inline LpSolution max_per(const Chromaticity& target, const CmfTable& cmf, double km, double delta_nm) {
    return simplex_solve(build_problem(target, cmf, km, delta_nm));
}

inline LpSolution max_per(const Chromaticity& target, const CmfTable& cmf, double km) {
    return max_per(target, cmf, km, cmf.spacing());
}

struct IsoPerRow {
    double x, y;
    std::optional<double> max_per;  // empty: outside the gamut or infeasible
};

struct IsoPerGrid {
    double grid_step = 0.0;
    std::vector<IsoPerRow> rows;
};

/// Maximum PER on the chromaticity grid x = i*step, y = j*step, x + y <= 1,
/// rows ordered by y then x. Grid points are solved concurrently on
/// `threads` workers (0: hardware concurrency); the output order does not
/// depend on scheduling.
inline IsoPerGrid iso_per_scan(double grid_step, const CmfTable& cmf, double km, double delta_nm,
                               unsigned threads = 0) {
    if (!(grid_step > 0.0 && grid_step <= 0.05)) throw DomainError("iso_per_scan: require 0 < step <= 0.05");
    const auto steps = static_cast<long>(std::floor(1.0 / grid_step + 1e-9));

    IsoPerGrid grid;
    grid.grid_step = grid_step;
    for (long j = 0; j <= steps; ++j) {
        for (long i = 0; i <= steps; ++i) {
            const double x = static_cast<double>(i) * grid_step;
            const double y = static_cast<double>(j) * grid_step;
            if (x + y <= 1.0 + 1e-12) grid.rows.push_back({x, y, std::nullopt});
        }
    }

    const GamutPolygon gamut(cmf);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < grid.rows.size(); k = next++) {
            auto& row = grid.rows[k];
            const Chromaticity p{row.x, row.y};
            if (!gamut.contains(p) || p.x + p.y > 1.0) continue;
            try {
                const LpSolution s = max_per(p, cmf, km, delta_nm);
                if (s.status == LpStatus::Optimal) row.max_per = s.objective_value;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

}  // namespace lumen
