#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "lumen/maxper.hpp"
#include "lp_oracle.hpp"

namespace {

using namespace lumen;

const CmfTable& cie() {
    static const CmfTable table = load_cmf_file(LUMEN_CMF_FILE);
    return table;
}

Chromaticity chromaticity_of(const LpSolution& s, const CmfTable& cmf) {
    Tristimulus t{0.0, 0.0, 0.0};
    for (const auto& line : s.support) {
        t = t + Tristimulus{cmf.x_at(line.wavelength_nm), cmf.y_at(line.wavelength_nm), cmf.z_at(line.wavelength_nm)} *
                    line.weight;
    }
    return chromaticity(t);
}

double distance_to_boundary(const GamutPolygon& g, const Chromaticity& p) {
    const auto v = g.vertices();
    double best = 1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        const double dx = b.x - a.x, dy = b.y - a.y, len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(p.x - a.x - t * dx, p.y - a.y - t * dy));
    }
    return best;
}

const Chromaticity kWhite{1.0 / 3.0, 1.0 / 3.0};

TEST(BuildProblem, Shape) {
    const auto p = build_problem(kWhite, cie(), 683.0, 5.0);
    EXPECT_EQ(p.size(), 81u);
    ASSERT_EQ(p.constraints().size(), 3u);
    for (const auto& row : p.constraints()) EXPECT_EQ(row.size(), 81u);
    EXPECT_EQ(p.rhs(), (std::vector<double>{1.0, 0.0, 0.0}));
    const auto it = std::find(p.wavelengths().begin(), p.wavelengths().end(), 555.0);
    ASSERT_NE(it, p.wavelengths().end());
    EXPECT_EQ(p.objective()[static_cast<std::size_t>(it - p.wavelengths().begin())], 683.0);
}

TEST(BuildProblem, MonochromaticColumnIsFeasible) {
    const auto r = cie().row(35);  // 555 nm
    const double s = r.xbar + r.ybar + r.zbar;
    const auto p = build_problem({r.xbar / s, r.ybar / s}, cie(), 683.0, 5.0);
    EXPECT_NEAR(p.constraints()[1][35], 0.0, 1e-15);
    EXPECT_NEAR(p.constraints()[2][35], 0.0, 1e-15);
}

TEST(BuildProblem, StepMustMatchTheGrid) {
    EXPECT_THROW(build_problem(kWhite, cie(), 683.0, 7.0), DomainError);
    EXPECT_THROW(build_problem(kWhite, cie(), 683.0, 0.0), DomainError);
    EXPECT_THROW(build_problem(kWhite, cie(), 683.0, 2.5), DomainError);
    EXPECT_EQ(build_problem(kWhite, cie(), 683.0, 10.0).size(), 41u);
    EXPECT_THROW(build_problem({-0.1, 0.3}, cie(), 683.0, 5.0), DomainError);
}

TEST(LpProblem, RejectsMalformedInput) {
    const std::vector<double> w{1, 2, 3, 4}, c{1, 1, 1, 1};
    const std::vector<std::vector<double>> a(3, std::vector<double>(4, 1.0));
    EXPECT_NO_THROW(LpProblem(w, c, a, {1, 0, 0}, 1.0));
    EXPECT_THROW(LpProblem(w, c, a, {1, 1, 0}, 1.0), DomainError);
    EXPECT_THROW(LpProblem(w, c, {a[0], a[1]}, {1, 0, 0}, 1.0), DomainError);
    EXPECT_THROW(LpProblem({1, 2, 3}, {1, 1, 1}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}, {1, 0, 0}, 1.0), DomainError);
}

TEST(MaxPer, AgreesWithEnumerationOnSixWavelengths) {
    const auto reduced = cie().subsample(12, 8, 6);  // 440, 480, ..., 640 nm
    ASSERT_EQ(reduced.size(), 6u);
    const auto p = build_problem(kWhite, reduced, 683.0, 40.0);
    const auto oracle = lumen_test::enumerate_bases(p);
    const auto got = simplex_solve(p);
    ASSERT_TRUE(oracle.has_value());
    ASSERT_EQ(got.status, LpStatus::Optimal);
    EXPECT_NEAR(got.objective_value, *oracle, 1e-9 * *oracle);
}

TEST(MaxPer, AgreesWithEnumerationOnRandomReducedInstances) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> first(0, 20), stride(2, 10), count(4, 8);
    std::uniform_real_distribution<double> u(0.0, 0.8);
    int feasible = 0;
    for (int k = 0; k < 50; ++k) {
        const std::size_t s = stride(rng);
        const auto reduced = cie().subsample(first(rng), s, count(rng));
        if (reduced.size() < 4) continue;
        const Chromaticity target{u(rng), u(rng)};
        const auto p = build_problem(target, reduced, 683.0, 5.0 * static_cast<double>(s));
        const auto oracle = lumen_test::enumerate_bases(p);
        const auto got = simplex_solve(p);
        ASSERT_EQ(got.status == LpStatus::Optimal, oracle.has_value()) << target.x << "," << target.y;
        if (oracle) {
            ++feasible;
            EXPECT_NEAR(got.objective_value, *oracle, 1e-9 * *oracle);
        }
    }
    EXPECT_GT(feasible, 5);
}

TEST(MaxPer, AgreesWithEnumerationAtFullSize) {
    const auto p = build_problem(kWhite, cie(), 683.0, 5.0);
    const auto oracle = lumen_test::enumerate_bases(p);
    ASSERT_TRUE(oracle.has_value());
    const auto got = simplex_solve(p);
    ASSERT_EQ(got.status, LpStatus::Optimal);
    EXPECT_NEAR(got.objective_value, *oracle, 1e-9 * *oracle);
    EXPECT_NEAR(got.objective_value, 427.146104, 1e-4);
}

TEST(MaxPer, SupportIsAtMostThreeLinesAndReproducesTarget) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.05, 0.75);
    const GamutPolygon g(cie());
    int tried = 0;
    while (tried < 40) {
        const Chromaticity t{u(rng), u(rng)};
        if (!g.contains(t) || distance_to_boundary(g, t) < 1e-3) continue;
        ++tried;
        const auto s = max_per(t, cie(), 683.0);
        ASSERT_EQ(s.status, LpStatus::Optimal);
        EXPECT_GE(s.support.size(), 1u);
        EXPECT_LE(s.support.size(), 3u);
        double total = 0.0;
        for (const auto& l : s.support) total += l.weight * 5.0;
        EXPECT_NEAR(total, 1.0, 1e-9);
        const auto xy = chromaticity_of(s, cie());
        EXPECT_NEAR(xy.x, t.x, 1e-6);
        EXPECT_NEAR(xy.y, t.y, 1e-6);
        EXPECT_LE(s.objective_value, 683.0 * (1.0 + 1e-12));
    }
}

TEST(MaxPer, ObjectiveScalesWithKm) {
    const auto a = max_per(kWhite, cie(), 683.0);
    const auto b = max_per(kWhite, cie(), 1366.0);
    EXPECT_NEAR(b.objective_value, 2.0 * a.objective_value, 1e-9 * b.objective_value);
}

// Only locus points that are strict vertices of the convex hull are reachable
// by a single line; elsewhere a blend of neighbours may do better.
TEST(MaxPer, HullVerticesAreMonochromatic) {
    const auto locus = spectral_locus(cie());
    const std::size_t n = locus.size();
    int checked = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool duplicate = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && std::hypot(locus[j].x - locus[i].x, locus[j].y - locus[i].y) < 1e-6) duplicate = true;
        }
        if (duplicate) continue;
        // Strict hull vertex: the other points leave an angular gap wider
        // than a half-turn around it.
        std::vector<double> angles;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) angles.push_back(std::atan2(locus[j].y - locus[i].y, locus[j].x - locus[i].x));
        }
        std::sort(angles.begin(), angles.end());
        double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
        for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
        if (gap <= std::numbers::pi + 1e-6) continue;
        ++checked;
        const auto s = max_per(locus[i], cie(), 683.0);
        ASSERT_EQ(s.status, LpStatus::Optimal) << cie().row(i).wavelength_nm;
        EXPECT_NEAR(s.objective_value, 683.0 * cie().row(i).ybar, 1e-6 * 683.0) << cie().row(i).wavelength_nm;
    }
    EXPECT_GT(checked, 30);
}

TEST(MaxPer, OutsideTheGamutIsInfeasible) {
    EXPECT_EQ(max_per({0.8, 0.8}, cie(), 683.0).status, LpStatus::Infeasible);
    EXPECT_EQ(max_per({0.05, 0.05}, cie(), 683.0).status, LpStatus::Infeasible);
    EXPECT_EQ(max_per({0.6, 0.1}, cie(), 683.0).status, LpStatus::Infeasible);
}

TEST(MaxPer, FeasibilityMatchesGamutAwayFromBoundary) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(0.0, 0.9);
    const GamutPolygon g(cie());
    int compared = 0;
    for (int k = 0; k < 200; ++k) {
        const Chromaticity t{u(rng), u(rng)};
        if (distance_to_boundary(g, t) < 0.005) continue;
        ++compared;
        EXPECT_EQ(max_per(t, cie(), 683.0).status == LpStatus::Optimal, g.contains(t)) << t.x << "," << t.y;
    }
    EXPECT_GT(compared, 150);
}

TEST(MaxPer, BlueCornerIsDim) {
    const auto s = max_per({0.17, 0.02}, cie(), 683.0);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_LT(s.objective_value, 0.1 * 683.0);
}

TEST(IsoPerScan, BoundedDeterministicAndSmooth) {
    const double step = 0.01;
    const auto a = iso_per_scan(step, cie(), 683.0, 5.0, 4);
    const auto b = iso_per_scan(step, cie(), 683.0, 5.0, 1);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    const GamutPolygon g(cie());
    std::size_t solved = 0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].x, b.rows[i].x);
        EXPECT_EQ(a.rows[i].y, b.rows[i].y);
        EXPECT_EQ(a.rows[i].max_per, b.rows[i].max_per);
        if (a.rows[i].max_per) {
            ++solved;
            EXPECT_LE(*a.rows[i].max_per, 683.0 * (1.0 + 1e-9));
            EXPECT_GE(*a.rows[i].max_per, 0.0);
        }
    }
    EXPECT_GT(solved, 1500u);

    // Row-major order: y outer, x inner. Compare horizontal neighbours
    // whose chromaticities sit well inside the gamut.
    for (std::size_t i = 1; i < a.rows.size(); ++i) {
        const auto &p = a.rows[i - 1], &q = a.rows[i];
        ASSERT_TRUE(q.y > p.y || (q.y == p.y && q.x > p.x));
        if (q.y != p.y || !p.max_per || !q.max_per) continue;
        if (distance_to_boundary(g, {p.x, p.y}) < 0.02 || distance_to_boundary(g, {q.x, q.y}) < 0.02) continue;
        EXPECT_LT(std::abs(*p.max_per - *q.max_per), 60.0) << p.x << "," << p.y;
    }
}

TEST(IsoPerScan, RejectsCoarseGrid) {
    EXPECT_THROW(iso_per_scan(0.1, cie(), 683.0, 5.0), DomainError);
    EXPECT_THROW(iso_per_scan(0.0, cie(), 683.0, 5.0), DomainError);
}

}  // namespace
