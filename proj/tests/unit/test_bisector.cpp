#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "crlab/bisector.hpp"
#include "crlab/pw_family.hpp"

using namespace crlab;

namespace {
const double kPi = std::numbers::pi;
cplx ei(double t) { return std::polar(1.0, t); }

// Random point of the given sign, scaled to <v,v> = sign.
Vec3 random_point(const HermitianSpace& H, std::mt19937_64& g, int sign)
{
    std::normal_distribution<double> n(0, 1);
    for (;;) {
        Vec3 v(cplx(n(g), n(g)), cplx(n(g), n(g)), cplx(n(g), n(g)));
        double h = H.norm(v);
        if (h * sign > 0.05 * v.squaredNorm()) return v / std::sqrt(std::abs(h));
    }
}

// Order-3 symmetric triple in the ball model, all in the real plane.
std::array<Vec3, 3> rotated_triple(double a)
{
    Mat3 S = Mat3::Zero();
    double c = std::cos(2 * kPi / 3), s = std::sin(2 * kPi / 3);
    S << c, -s, 0, s, c, 0, 0, 0, 1;
    Vec3 p(a, 0, 1);
    return {p, S * p, S * S * p};
}
}  // namespace

TEST(Bisector, KindOfPWBisectors)
{
    auto H = HermitianSpace::siegel();
    for (double a : {0.2, 0.4, kPi / 6, 0.6, 0.9, 1.3}) {
        auto pts = remarkable_points({0, a});
        auto b = classify_bisector(H, pts.pU, pts.pV);
        double c2 = std::cos(a) * std::cos(a);
        EXPECT_NEAR(b.r_disc, 4 * c2 * (4 * c2 - 3), 1e-12);
        auto expected = a > kPi / 6 + 1e-9   ? BisectorKind::MetricBisector
                        : a < kPi / 6 - 1e-9 ? BisectorKind::CliffordCone
                                             : BisectorKind::Fan;
        EXPECT_EQ(b.kind, expected) << a;
    }
}

TEST(Bisector, KindFromLocations)
{
    auto H = HermitianSpace::ball();
    std::mt19937_64 g(3);
    for (int k = 0; k < 20; ++k)
        EXPECT_EQ(classify_bisector(H, random_point(H, g, -1), random_point(H, g, -1)).kind,
                  BisectorKind::MetricBisector);
    EXPECT_EQ(classify_bisector(H, Vec3(1, 0, 0), Vec3(0, 1, 0)).kind, BisectorKind::CliffordCone);
    EXPECT_THROW(classify_bisector(H, Vec3(1, 0, 0), Vec3(0, 0, 1)), std::invalid_argument);
}

TEST(Bisector, PAOnSpinalSurface)
{
    auto H = HermitianSpace::siegel();
    for (double a : {0.3, 0.7, 1.2}) {
        auto pts = remarkable_points({0, a});
        auto m = membership(classify_bisector(H, pts.pU, pts.pV), pts.pA);
        EXPECT_TRUE(m.on_spinal);
        EXPECT_NEAR(m.residual, 0, 1e-14);
        EXPECT_NEAR(std::abs(H.inner(pts.pA, pts.pU)), 1, 1e-14);
    }
}

TEST(Bisector, PointNotOnOwnExtor)
{
    auto H = HermitianSpace::ball();
    Vec3 p(0, 0, 1), q(std::sinh(1.0), 0, std::cosh(1.0));
    auto b = classify_bisector(H, p, q);
    EXPECT_FALSE(membership(b, p).on_extor);
}

TEST(Bisector, MidpointLiesOnBisector)
{
    auto H = HermitianSpace::ball();
    std::mt19937_64 g(5);
    for (int k = 0; k < 20; ++k) {
        Vec3 p = random_point(H, g, -1), q = random_point(H, g, -1);
        auto b = classify_bisector(H, p, q);
        ASSERT_EQ(b.kind, BisectorKind::MetricBisector);
        // alpha with <p, alpha q> negative real
        cplx pq = H.inner(p, q);
        cplx alpha = -std::conj(pq) / std::abs(pq);
        auto m = membership(b, p + alpha * q);
        EXPECT_TRUE(m.on_bisector);
    }
}

TEST(Bisector, SlicesLieInExtor)
{
    std::mt19937_64 g(7);
    auto H = HermitianSpace::ball();
    for (int k = 0; k < 10; ++k) {
        auto b = classify_bisector(H, random_point(H, g, -1), random_point(H, g, -1));
        cplx pq = H.inner(b.p, b.q);
        int nonempty = 0;
        for (int j = 0; j < 8; ++j) {
            // slices polar to positive vectors meet the ball; start at the best one
            auto pts = slice_points(b, -pq / std::abs(pq) * ei(0.2 * j), 4, 12);
            if (pts.empty()) continue;
            ++nonempty;
            ASSERT_EQ(pts.size(), 48u);
            for (const auto& z : pts) EXPECT_TRUE(membership(b, z).on_extor);
            // last ring sits on the boundary
            EXPECT_EQ(H.locate(pts.back()), Location::Boundary);
        }
        EXPECT_GT(nonempty, 0);
    }
}

TEST(Bisector, PairKinds)
{
    auto H = HermitianSpace::siegel();
    double a = 0.8;
    auto rep = build_rep({0, a});
    auto pts = remarkable_points({0, a});
    Mat3 Uinv = rep.iso(rep.U).inverse().M();
    auto b1 = classify_bisector(H, pts.pU, pts.pV);
    auto b2 = classify_bisector(H, pts.pW, Uinv * pts.pW);
    EXPECT_EQ(classify_pair(b1, b2), ExtorPairKind::Balanced);

    std::mt19937_64 g(11);
    auto B = HermitianSpace::ball();
    for (int k = 0; k < 10; ++k) {
        Vec3 p = random_point(B, g, -1), q = random_point(B, g, -1), r = random_point(B, g, -1);
        EXPECT_EQ(classify_pair(classify_bisector(B, p, q), classify_bisector(B, p, r)), ExtorPairKind::Unbalanced);
    }

    // same focus, different circle: (p+q, p-q) with <p,q> imaginary
    Vec3 p = random_point(B, g, -1), q = random_point(B, g, -1);
    cplx pq = B.inner(p, q);
    q *= cplx(0, 1) * std::abs(pq) / pq;
    auto c1 = classify_bisector(B, p, q), c2 = classify_bisector(B, p + q, p - q);
    EXPECT_EQ(classify_pair(c1, c2), ExtorPairKind::Confocal);
    EXPECT_THROW(classify_pair(c1, classify_bisector(B, p, ei(0.4) * q)), std::invalid_argument);
}

TEST(Bisector, BalancedPairIsPlaneUnionLine)
{
    auto H = HermitianSpace::siegel();
    for (double a : {0.4, 0.8, 1.2}) {
        auto rep = build_rep({0, a});
        auto pts = remarkable_points({0, a});
        Vec3 p1 = pts.pU, q1 = pts.pV, p2 = pts.pW, q2 = rep.iso(rep.U).inverse()(pts.pW);
        Vec3 lpole(std::sin(a), cplx(0, -std::sqrt(2.0) / 2), -std::sin(a));
        auto b1 = classify_bisector(H, p1, q1), b2 = classify_bisector(H, p2, q2);
        int count = 0;
        for (int i = 0; i < 20 && count < 200; ++i)
            for (int j = 0; j < 10; ++j) {
                Vec3 z = H.box(q1 - ei(2 * kPi * (i + 0.3) / 20) * p1, q2 - ei(2 * kPi * (j + 0.7) / 10) * p2);
                if (z.norm() < 1e-6) continue;
                z = normalized(z);
                EXPECT_TRUE(membership(b1, z).on_extor);
                EXPECT_TRUE(membership(b2, z).on_extor);
                double dl = std::abs(H.inner(lpole.normalized(), z));
                // m: [x, iy, 1] with x, y real, or [1, iy, 0], or [0,1,0]
                double dm;
                if (std::abs(z(2)) > 1e-3) {
                    Vec3 w = z / z(2);
                    dm = std::abs(w(0).imag()) + std::abs(w(1).real());
                } else {
                    Vec3 w = std::abs(z(0)) > 1e-3 ? Vec3(z / z(0)) : Vec3(z / z(1));
                    dm = std::abs(z(0)) > 1e-3 ? std::abs(w(1).real()) + std::abs(w(2))
                                               : std::abs(w(0)) + std::abs(w(2));
                }
                EXPECT_LE(std::min(dl, dm), 1e-7) << a << " " << i << " " << j;
                ++count;
            }
        EXPECT_EQ(count, 200);
    }
}

TEST(Bisector, GiraudSamplesOnBothExtors)
{
    std::mt19937_64 g(13);
    auto H = HermitianSpace::ball();
    Vec3 p = random_point(H, g, -1), q = random_point(H, g, -1), r = random_point(H, g, -1);
    GiraudTorus T(H, p, q, r);
    auto b1 = classify_bisector(H, p, q), b2 = classify_bisector(H, p, r);
    for (int i = 0; i < 30; ++i) {
        auto s = T.sample(0.2 * i, 0.37 * i + 1);
        EXPECT_TRUE(membership(b1, s.point).on_extor);
        EXPECT_TRUE(membership(b2, s.point).on_extor);
    }
    // confocal: r in the complex line of p and q
    Vec3 a(0, 0, 1), b(std::sinh(0.5), 0, std::cosh(0.5)), c(std::sinh(1.5), 0, std::cosh(1.5));
    EXPECT_THROW(GiraudTorus(H, a, b, c), std::invalid_argument);
    EXPECT_THROW(GiraudTorus(H, a, b, ei(0.3) * b), std::invalid_argument);
}

TEST(Bisector, SymmetricNormFormula)
{
    auto [p, q, r] = rotated_triple(3.0);
    auto H = HermitianSpace::ball();
    auto t = symmetric_intersection_type(H, p, q, r);
    for (int i = 0; i < 25; ++i) {
        double th = 0.3 * i, ph = 1.1 * i + 0.2;
        Vec3 v = H.box(q - ei(th) * p, r - ei(ph) * p);
        EXPECT_NEAR(H.norm(v), 2 * t.k * (1.5 * t.u + symmetric_level(th, ph)), 1e-10);
    }
    EXPECT_DOUBLE_EQ(symmetric_level(0, 0), 3.0);
    double best = 10;
    for (int i = 0; i < 720; ++i)
        for (int j = 0; j < 720; ++j) best = std::min(best, symmetric_level(2 * kPi * i / 720, 2 * kPi * j / 720));
    EXPECT_NEAR(best, -1.5, 1e-12);
    EXPECT_NEAR(symmetric_level(2 * kPi / 3, -2 * kPi / 3), -1.5, 1e-12);
}

TEST(Bisector, PWSymmetricTriple)
{
    auto H = HermitianSpace::siegel();
    for (double a : {0.0, 0.3, 0.7, 1.1, 1.5}) {
        auto pts = remarkable_points({0, a});
        auto t = symmetric_intersection_type(H, pts.pU, pts.pV, pts.pW);
        double c2 = std::cos(a) * std::cos(a);
        EXPECT_NEAR(t.u, (2.0 / 3.0) * (4 * c2 - 3), 1e-12);
        EXPECT_NEAR(t.l, -4 * c2 * (4 * c2 - 3), 1e-12);
        EXPECT_NEAR(H.inner(H.box(pts.pU, pts.pV), H.box(pts.pW, pts.pU)).real(), -6 * c2, 1e-12);
        EXPECT_GT(t.l - t.k, 0);
        EXPECT_LT(t.l + 2 * t.k, 0);
        EXPECT_EQ(t.type, a == 0.0 ? SymmetricIntersection::TriCircleDisk : SymmetricIntersection::Disk);
    }
}

TEST(Bisector, SymmetricGridOracle)
{
    auto H = HermitianSpace::ball();
    // values of u frozen from an independent prototype
    const std::pair<double, double> cases[] = {{0.3, -1.87}, {2.0, 0.0}, {3.0, 0.4545}, {10.0, 0.941}};
    for (auto [a, u_ref] : cases) {
        auto [p, q, r] = rotated_triple(a);
        auto t = symmetric_intersection_type(H, p, q, r);
        EXPECT_NEAR(t.u, u_ref, 5e-3) << a;
        GiraudTorus T(H, p, q, r);
        auto top = level_set_topology(T.norm_grid(360), 360);
        bool ok = false;
        auto v = topology_verdict(top, ok);
        EXPECT_TRUE(ok) << a;
        EXPECT_EQ(v, t.type) << a;
    }
    for (double a2 : {0.2, 0.9, 1.4}) {
        auto pts = remarkable_points({0, a2});
        auto S = HermitianSpace::siegel();
        auto t = symmetric_intersection_type(S, pts.pU, pts.pV, pts.pW);
        GiraudTorus T(S, pts.pU, pts.pV, pts.pW);
        bool ok = false;
        EXPECT_EQ(topology_verdict(level_set_topology(T.norm_grid(720), 720), ok), t.type);
        EXPECT_TRUE(ok);
    }
}

TEST(Bisector, AsymmetricTripleRejected)
{
    auto H = HermitianSpace::ball();
    EXPECT_THROW(symmetric_intersection_type(H, Vec3(0.3, 0, 1), Vec3(0, 0.4, 1), Vec3(-0.2, -0.1, 1)),
                 std::invalid_argument);
}

TEST(Bisector, RealSpineEndpoints)
{
    auto H = HermitianSpace::ball();
    double r = 0.8;
    auto b = classify_bisector(H, Vec3(0, 0, 1), Vec3(std::sinh(r), 0, std::cosh(r)));
    auto e = real_spine_endpoints(b);
    ASSERT_EQ(e.size(), 2u);
    double t = std::acos(std::tanh(r));
    std::vector<Vec3> expected = {Vec3(ei(t), 0, 1), Vec3(ei(-t), 0, 1)};
    bool direct = proj_equal(e[0], expected[0]) && proj_equal(e[1], expected[1]);
    bool swapped = proj_equal(e[0], expected[1]) && proj_equal(e[1], expected[0]);
    EXPECT_TRUE(direct || swapped);

    auto S = HermitianSpace::siegel();
    auto pts = remarkable_points({0, 0.7});
    auto j = classify_bisector(S, pts.pU, pts.pV);
    for (const auto& z : real_spine_endpoints(j)) {
        auto m = membership(j, z);
        EXPECT_LE(std::abs(m.residual), 1e-8);
        EXPECT_EQ(m.loc, Location::Boundary);
    }
    auto cone = classify_bisector(S, remarkable_points({0, 0.3}).pU, remarkable_points({0, 0.3}).pV);
    EXPECT_THROW(real_spine_endpoints(cone), std::invalid_argument);
}

TEST(Bisector, SpinalPointsOnBoundary)
{
    auto H = HermitianSpace::siegel();
    auto pts = remarkable_points({0, 1.0});
    auto b = classify_bisector(H, pts.pU, pts.pV);
    auto sp = spinal_points(b, 16, 16);
    EXPECT_FALSE(sp.empty());
    for (const auto& z : sp) EXPECT_TRUE(membership(b, z).on_spinal);
}
