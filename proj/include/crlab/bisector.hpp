#pragma once

#include <vector>

#include "crlab/hermitian.hpp"
#include "crlab/kernels.hpp"

namespace crlab {

enum class BisectorKind { MetricBisector, Fan, CliffordCone };
enum class ExtorPairKind { Confocal, Balanced, SemiBalanced, Unbalanced };
enum class SymmetricIntersection { Disk, TriCircleDisk, TorusMinusTwoDisks };

const char* to_string(BisectorKind k);
const char* to_string(ExtorPairKind k);
const char* to_string(SymmetricIntersection k);

// Extor {|<z,p>| = |<z,q>|} with equal-norm lifts p, q.
struct Bisector {
    HermitianSpace space = HermitianSpace::siegel();
    Vec3 p, q;
    Vec3 focus;  // p ⊠ q
    BisectorKind kind = BisectorKind::MetricBisector;
    double r_disc = 0;  // <p,p><q,q> - |<p,q>|^2
};

// Throws std::invalid_argument when <p,p> and <q,q> differ.
Bisector classify_bisector(const HermitianSpace& H, const Vec3& p, const Vec3& q, double tol = kTol);

struct Membership {
    bool on_extor = false;
    bool on_bisector = false;  // extor point inside complex hyperbolic space
    bool on_spinal = false;    // extor point on the boundary
    double residual = 0;       // (|<z,p>| - |<z,q>|) / (|z| max(|p|,|q|))
    Location loc = Location::Inside;
};

Membership membership(const Bisector& b, const Vec3& z, double tol = kProjTol);

// Throws std::invalid_argument if both describe the same extor.
ExtorPairKind classify_pair(const Bisector& b1, const Bisector& b2, double tol = kProjTol);

struct GiraudSample {
    double theta = 0, phi = 0;
    Vec3 point;   // (q - e^{i theta} p) ⊠ (r - e^{i phi} p)
    double norm = 0;
};

// Intersection torus of the extors E(p,q) and E(p,r).
class GiraudTorus {
public:
    // Throws std::invalid_argument unless the pair is unbalanced.
    GiraudTorus(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r);

    GiraudSample sample(double theta, double phi) const;
    // <v,v> on an n x n grid, theta = 2 pi i / n along rows.
    std::vector<double> norm_grid(int n, int workers = 1) const;

    const HermitianSpace& space() const { return H_; }
    const Vec3& p() const { return p_; }
    const Vec3& q() const { return q_; }
    const Vec3& r() const { return r_; }

private:
    HermitianSpace H_;
    Vec3 p_, q_, r_;
};

// Level function cos t + cos f + cos(f - t) of the symmetric case.
double symmetric_level(double theta, double phi);

struct SymmetricTriple {
    SymmetricIntersection type = SymmetricIntersection::Disk;
    double u = 0;
    double k = 0;   // <p⊠q, q⊠r>, real negative
    double l = 0;   // <p⊠q, p⊠q>
    double residual = 0;  // symmetry defect of the Gram matrix
};

// Throws std::invalid_argument if the Gram matrix of the three box products
// is not circulant with a real negative off-diagonal entry.
SymmetricTriple symmetric_intersection_type(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r,
                                            double tol = kTol);

// Topology of {<v,v> < 0} on the periodic parameter grid.
struct LevelTopology {
    int inside_components = 0;
    int outside_components = 0;
    long inside_euler = 0;
};

LevelTopology level_set_topology(const std::vector<double>& norms, int n);
// Disk: one inside component with Euler characteristic 1.  Torus minus two
// disks: one inside component, two outside components, Euler characteristic -2.
SymmetricIntersection topology_verdict(const LevelTopology& t, bool& recognized);

// Endpoints of the real spine; throws unless the kind is MetricBisector.
std::vector<Vec3> real_spine_endpoints(const Bisector& b);

// Spine point of the slice (q - alpha p)^perp.
Vec3 spine_point(const Bisector& b, cplx alpha);

// Points e_neg + w e_pos of the slice (q - alpha p)^perp, w on `rings` circles of
// radius k/rings (the last one on the boundary), `per_ring` each.  Empty when the
// slice misses complex hyperbolic space.
std::vector<Vec3> slice_points(const Bisector& b, cplx alpha, int rings, int per_ring);

// J-orthonormal frame (<e_neg,e_neg> = -1, <e_pos,e_pos> = 1) of a complex line
// of signature (1,1); false for lines missing complex hyperbolic space.
bool line_frame(const HermitianSpace& H, const Line& L, Vec3& eneg, Vec3& epos);

// Boundary points of n_alpha slices, n_w per slice.
std::vector<Vec3> spinal_points(const Bisector& b, int n_alpha, int n_w);

}  // namespace crlab
