#pragma once

#include <vector>

#include "crlab/bisector.hpp"
#include "crlab/isometry.hpp"

namespace crlab {

// Point of the Riemann sphere.
struct ExtC {
    cplx z;
    bool inf = false;

    static ExtC infinity() { return {cplx(0), true}; }
};

// |den| <= 1e-12 |num| counts as infinity.
ExtC ext_div(cplx num, cplx den);
// Chordal distance on the unit sphere, in [0, 2].
double chordal(const ExtC& a, const ExtC& b);

// z -> (a z + b) / (c z + d)
struct Mobius {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();

    ExtC operator()(const ExtC& w) const;
    Mobius operator*(const Mobius& o) const { return {m * o.m}; }
    Mobius inverse() const;

    // The map sending z[k] to w[k]; throws std::invalid_argument on repeated points.
    static Mobius from_points(const std::array<ExtC, 3>& z, const std::array<ExtC, 3>& w);
};

// Chart of the lines through `base`: [q] -> <p1, q> / <p2, q> with p1, p2 in base^perp.
struct VisualChart {
    HermitianSpace space = HermitianSpace::siegel();
    Vec3 base, p1, p2;
};

// Throws std::invalid_argument unless p1, p2 are distinct points of base^perp.
VisualChart make_chart(const HermitianSpace& H, const Vec3& base, const Vec3& p1, const Vec3& p2);

// Throws std::invalid_argument when [q] = [base].
ExtC chart_value(const VisualChart& c, const Vec3& q);

// Map induced on the chart by an isometry fixing the base point.  Throws
// std::invalid_argument when g moves the base point.
Mobius induced_action(const VisualChart& c, const Mat3& g);

// Coordinate change: chart_value(to, q) = M(chart_value(from, q)).
Mobius chart_change(const VisualChart& from, const VisualChart& to);

// Complex line through [p] and the boundary point [r] against the spinal
// surface of E(p,q): tangent iff <p,r> = e <q,r> and <q,p> != e <p,p> for some e = +-1.
// Throws std::invalid_argument if <p,q> is not real nonzero, the norms differ,
// or r is not a boundary point of the extor.
bool tangency_check(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r);

// Sign changes of |<p,z>|^2 - |<q,z>|^2 along the boundary circle of the line
// through [p] and [r], sampled at n points offset half a step from [r].
int crossing_count(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r, int n = 4096);

// Generalized circle: a Euclidean circle or a line (through infinity).
struct GenCircle {
    bool line = false;
    cplx center;       // circle
    double radius = 0;
    cplx point, dir;   // line: point + t dir
};

GenCircle circle_through(const std::array<ExtC, 3>& pts);
double circle_distance(const GenCircle& c, const ExtC& w);

// Image of the closed bisector B(p,q) in the visual sphere of [p].
// The privileged chart is psi*([z]) = <f,z>/<q~,z> with f = p ⊠ q and q~ the
// projection of q on p^perp, so that l_{p,q} -> 0 and l_{p,f} -> infinity.
//   metric bisector: {|psi*| <= R};  Clifford cone: {|psi*| >= R};
//   fan: in the adapted chart of the same name, {Re w <= -1/8} and infinity.
struct DiskDescriptor {
    BisectorKind kind = BisectorKind::MetricBisector;
    double radius = 0;          // R, or the abscissa -1/8 for fans
    VisualChart privileged;
    VisualChart target;
    Mobius to_target;           // privileged -> target
    GenCircle boundary_circle;  // in the target chart
    std::vector<ExtC> boundary; // sampled in the target chart

    bool contains_privileged(const ExtC& w, double tol = 1e-9) const;
    bool contains(const ExtC& w_target, double tol = 1e-9) const;
    bool contains_line_through(const Vec3& z, double tol = 1e-9) const;
    // Signed margin, positive inside (relative units of the privileged chart).
    double margin_privileged(const ExtC& w) const;
};

// Throws std::invalid_argument if b.p is not the chart base or is isotropic.
DiskDescriptor project_bisector(const VisualChart& target, const Bisector& b, int samples = 1024);

// m(alpha) = |psi*|^2 on the boundary circle of the slice (q - alpha p)^perp;
// negative when a metric bisector slice misses complex hyperbolic space.
double projection_radius_sq(const Bisector& b, cplx alpha);

// Real angular diameter of B(p,q) seen from [p]: cos(t/2) = tanh(d/4), with
// cosh^2(d/2) = <p,q><q,p> / (<p,p><q,q>).  The extremal directions point to the
// boundary slice through [p + q'] with <p,q'> real, not to the ends of the real
// spine.  Throws std::invalid_argument unless both points are inside.
double angular_diameter(const HermitianSpace& H, const Vec3& p, const Vec3& q);
// The value cos(t/2) = tanh(d/2), attained by the ends of the real spine.  It is
// the angle subtended by the real spine only and underestimates the diameter.
double spine_angular_diameter(const HermitianSpace& H, const Vec3& p, const Vec3& q);

struct AngularSample {
    int samples = 0;
    double max_from_axis = 0;  // largest angle between the geodesic to [q] and one to a spinal point
    double max_pairwise = 0;   // largest angle between two sampled directions
};

// Sampling oracle on about n spinal points of B(p,q) seen from [p].
AngularSample angular_oracle(const HermitianSpace& H, const Vec3& p, const Vec3& q, int n = 5000, int workers = 1);
double hyperbolic_distance(const HermitianSpace& H, const Vec3& p, const Vec3& q);
// Angle at [p] between the real geodesics to [a] and [b] (inside or boundary points).
double angle_at(const HermitianSpace& H, const Vec3& p, const Vec3& a, const Vec3& b);

}  // namespace crlab
