#include <algorithm>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "crlab/figures.hpp"

using namespace crlab;
using namespace crlab::fig;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Figures, LevelSetExtrema)
{
    auto g = level_sets_grid(720, 2);
    auto [lo, hi] = std::minmax_element(g.v.begin(), g.v.end());
    EXPECT_NEAR(*lo, -1.5, 1e-12);
    EXPECT_NEAR(*hi, 3.0, 1e-12);
}

TEST(Figures, ContourOfCircle)
{
    Grid2 g;
    g.nx = g.ny = 101;
    g.x0 = g.y0 = -2;
    g.x1 = g.y1 = 2;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) g.v.push_back(g.x(i) * g.x(i) + g.y(j) * g.y(j));
    auto segs = contour(g, 1.0);
    EXPECT_GT(segs.size(), 100u);
    for (const auto& [a, b] : segs) {
        EXPECT_NEAR(std::hypot(a.first, a.second), 1.0, 2e-3);
        EXPECT_NEAR(std::hypot(b.first, b.second), 1.0, 2e-3);
    }
}

TEST(Figures, PeachSingularPoints)
{
    auto g = peach_grid(241);
    auto pts = peach_singular_points(g);
    ASSERT_EQ(pts.size(), 2u);
    const double step = kPi / 240;
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.second < b.second; });
    EXPECT_NEAR(pts[0].first, 0, step);
    EXPECT_NEAR(pts[0].second, -alpha2_lim(), step);
    EXPECT_NEAR(pts[1].first, 0, step);
    EXPECT_NEAR(pts[1].second, alpha2_lim(), step);
}

TEST(Figures, SchwartzPointOnBothCurves)
{
    cplx w = schwartz_point();
    EXPECT_LT(std::abs(goldman_f(w)), 1e-10);
    EXPECT_LT(std::abs(branch_function(w)), 1e-10);
    // the slice alpha1 = 0 reaches w = 3 at the unipotent parameter
    cplx w3 = trace_coords(build_rep({0, alpha2_lim()})).w;
    EXPECT_LT(std::abs(w3 - 3.0), 1e-9);
}

TEST(Figures, DiskSectors)
{
    for (int n : {9, 20}) {
        auto dp = disk_projection(alpha2_for_order(n), 256, 2);
        ASSERT_EQ(dp.disks.size(), 2u * n);
        for (const auto& d : dp.disks) {
            EXPECT_LT(d.max_offset, dp.sector_half_width) << n << " " << d.family << " " << d.k;
            EXPECT_EQ(d.boundary.size(), 256u);
        }
        EXPECT_EQ(dp.marked.size(), 2u * n);
    }
    auto lox = disk_projection(0.5, 128, 1);
    for (const auto& d : lox.disks) EXPECT_LT(d.max_offset, lox.sector_half_width);
}

TEST(Figures, DeterministicAcrossWorkers)
{
    for (const auto& name : figure_names()) {
        FigureOptions o;
        o.res = 64;
        o.n = 10;
        o.samples = 64;
        o.workers = 1;
        auto a = make_figure(name, o);
        o.workers = 4;
        auto b = make_figure(name, o);
        ASSERT_EQ(a.tables.size(), b.tables.size()) << name;
        for (size_t i = 0; i < a.tables.size(); ++i) EXPECT_EQ(to_csv(a.tables[i]), to_csv(b.tables[i])) << name;
        EXPECT_EQ(to_svg(a), to_svg(b)) << name;
    }
}

TEST(Figures, Formats)
{
    Table t;
    t.header = {"x", "y"};
    t.rows = {{0.1, 1.0 / 3}};
    EXPECT_EQ(to_csv(t), "x,y\n0.10000000000000001,0.33333333333333331\n");
    FigureOptions o;
    o.res = 64;
    auto f = make_figure("level-sets", o);
    auto svg = to_svg(f);
    EXPECT_NE(svg.find("width=\"800\" height=\"800\""), std::string::npos);
    EXPECT_NE(svg.find("viewBox=\"0 -6.28318531 6.28318531 6.28318531\""), std::string::npos);
    auto dir = std::filesystem::temp_directory_path() / "crlab_fig_test";
    auto paths = write_figure(f, dir.string());
    EXPECT_EQ(paths.size(), 2u);
    for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
    std::filesystem::remove_all(dir);
}

TEST(Figures, BadOptions)
{
    FigureOptions o;
    EXPECT_THROW(make_figure("no-such-figure", o), std::invalid_argument);
    o.res = 10;
    EXPECT_THROW(make_figure("level-sets", o), std::invalid_argument);
    o.res = 64;
    o.n = 0;
    o.alpha2 = 1.4;  // infinite order
    EXPECT_THROW(make_figure("disk-projection", o), std::invalid_argument);
}
