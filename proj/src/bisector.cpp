#include "crlab/bisector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crlab {

using std::numbers::pi;

const char* to_string(BisectorKind k)
{
    switch (k) {
    case BisectorKind::MetricBisector: return "MetricBisector";
    case BisectorKind::Fan: return "Fan";
    case BisectorKind::CliffordCone: return "CliffordCone";
    }
    return "?";
}

const char* to_string(ExtorPairKind k)
{
    switch (k) {
    case ExtorPairKind::Confocal: return "Confocal";
    case ExtorPairKind::Balanced: return "Balanced";
    case ExtorPairKind::SemiBalanced: return "SemiBalanced";
    case ExtorPairKind::Unbalanced: return "Unbalanced";
    }
    return "?";
}

const char* to_string(SymmetricIntersection k)
{
    switch (k) {
    case SymmetricIntersection::Disk: return "Disk";
    case SymmetricIntersection::TriCircleDisk: return "TriCircleDisk";
    case SymmetricIntersection::TorusMinusTwoDisks: return "TorusMinusTwoDisks";
    }
    return "?";
}

Bisector classify_bisector(const HermitianSpace& H, const Vec3& p, const Vec3& q, double tol)
{
    double np = H.norm(p), nq = H.norm(q);
    double scale = std::max({1.0, p.squaredNorm(), q.squaredNorm()});
    if (std::abs(np - nq) > tol * scale) throw std::invalid_argument("classify_bisector: lifts of different norms");
    Bisector b;
    b.space = H;
    b.p = p;
    b.q = q;
    b.focus = H.box(p, q);
    b.r_disc = np * nq - std::norm(H.inner(p, q));
    double band = 1e-9 * std::max(1.0, np * np);
    if (std::abs(b.r_disc) <= band)
        b.kind = BisectorKind::Fan;
    else
        b.kind = b.r_disc < 0 ? BisectorKind::MetricBisector : BisectorKind::CliffordCone;
    return b;
}

Membership membership(const Bisector& b, const Vec3& z, double tol)
{
    Membership m;
    const auto& H = b.space;
    double scale = z.norm() * std::max(b.p.norm(), b.q.norm());
    m.residual = (std::abs(H.inner(z, b.p)) - std::abs(H.inner(z, b.q))) / scale;
    m.loc = H.locate(z);
    m.on_extor = std::abs(m.residual) <= tol;
    m.on_bisector = m.on_extor && m.loc == Location::Inside;
    m.on_spinal = m.on_extor && m.loc == Location::Boundary;
    return m;
}

namespace {

// Matrix of the real quadratic form z -> |<z,p>|^2 - |<z,q>|^2, scaled to unit norm.
Mat3 extor_form(const Bisector& b)
{
    Vec3 a = b.space.J() * b.p, c = b.space.J() * b.q;
    Mat3 M = a * a.adjoint() - c * c.adjoint();
    return M / M.norm();
}

bool contains_line_through_focus(const Bisector& b, const Vec3& other, double tol)
{
    // the line through the focus lies in the extor iff one more point does
    Vec3 f = b.focus.normalized(), o = other.normalized();
    cplx w(0.6, 0.8);
    return std::abs(membership(b, o, tol).residual) <= tol && std::abs(membership(b, f + w * o, tol).residual) <= tol;
}

}  // namespace

ExtorPairKind classify_pair(const Bisector& b1, const Bisector& b2, double tol)
{
    Mat3 m1 = extor_form(b1), m2 = extor_form(b2);
    if (std::min((m1 - m2).norm(), (m1 + m2).norm()) <= tol)
        throw std::invalid_argument("classify_pair: identical extors");
    if (proj_equal(b1.focus, b2.focus, tol)) return ExtorPairKind::Confocal;
    bool in1 = contains_line_through_focus(b1, b2.focus, tol);
    bool in2 = contains_line_through_focus(b2, b1.focus, tol);
    if (in1 && in2) return ExtorPairKind::Balanced;
    if (in1 || in2) return ExtorPairKind::SemiBalanced;
    return ExtorPairKind::Unbalanced;
}

GiraudTorus::GiraudTorus(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r)
    : H_(H), p_(p), q_(q), r_(r)
{
    auto b1 = classify_bisector(H, p, q, 1e-7);
    auto b2 = classify_bisector(H, p, r, 1e-7);
    if (classify_pair(b1, b2) != ExtorPairKind::Unbalanced)
        throw std::invalid_argument("GiraudTorus: pair of extors is not unbalanced");
}

GiraudSample GiraudTorus::sample(double theta, double phi) const
{
    GiraudSample s;
    s.theta = theta;
    s.phi = phi;
    s.point = H_.box(q_ - std::polar(1.0, theta) * p_, r_ - std::polar(1.0, phi) * p_);
    s.norm = H_.norm(s.point);
    return s;
}

std::vector<double> GiraudTorus::norm_grid(int n, int workers) const
{
    const double h = 2 * pi / n;
    return kernels::grid(n, n, [&](int i, int j) { return sample(h * i, h * j).norm; }, workers);
}

double symmetric_level(double theta, double phi) { return std::cos(theta) + std::cos(phi) + std::cos(phi - theta); }

SymmetricTriple symmetric_intersection_type(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r,
                                            double tol)
{
    Vec3 a = H.box(p, q), b = H.box(q, r), c = H.box(r, p);
    cplx k1 = H.inner(a, b), k2 = H.inner(b, c), k3 = H.inner(c, a);
    double l1 = H.norm(a), l2 = H.norm(b), l3 = H.norm(c);
    double scale = std::max({1.0, std::abs(l1), std::abs(k1)});
    SymmetricTriple t;
    t.residual = std::max({std::abs(k1 - k2), std::abs(k1 - k3), std::abs(k1.imag()), std::abs(l1 - l2),
                           std::abs(l1 - l3)}) /
                 scale;
    if (t.residual > tol) throw std::invalid_argument("symmetric_intersection_type: triple is not order-3 symmetric");
    t.k = k1.real();
    t.l = l1;
    if (!(t.k < 0)) throw std::invalid_argument("symmetric_intersection_type: <p⊠q, q⊠r> is not negative");
    t.u = t.l / t.k;
    if (std::abs(t.u - 2.0 / 3.0) <= tol)
        t.type = SymmetricIntersection::TriCircleDisk;
    else
        t.type = t.u < 2.0 / 3.0 ? SymmetricIntersection::Disk : SymmetricIntersection::TorusMinusTwoDisks;
    return t;
}

LevelTopology level_set_topology(const std::vector<double>& norms, int n)
{
    std::vector<uint8_t> in(norms.size()), out(norms.size());
    for (size_t k = 0; k < norms.size(); ++k) {
        in[k] = norms[k] < 0;
        out[k] = !in[k];
    }
    LevelTopology t;
    t.inside_components = kernels::periodic_components(in, n, n).count;
    t.outside_components = kernels::periodic_components(out, n, n).count;
    t.inside_euler = kernels::periodic_euler(in, n, n);
    return t;
}

SymmetricIntersection topology_verdict(const LevelTopology& t, bool& recognized)
{
    recognized = true;
    if (t.inside_components == 1 && t.inside_euler == 1) return SymmetricIntersection::Disk;
    if (t.inside_components == 1 && t.outside_components == 2 && t.inside_euler == -2)
        return SymmetricIntersection::TorusMinusTwoDisks;
    recognized = false;
    return SymmetricIntersection::Disk;
}

Vec3 spine_point(const Bisector& b, cplx alpha) { return b.space.box(b.q - alpha * b.p, b.focus); }

std::vector<Vec3> real_spine_endpoints(const Bisector& b)
{
    if (b.kind != BisectorKind::MetricBisector)
        throw std::invalid_argument("real_spine_endpoints: not a metric bisector");
    // spine point x(alpha) = a - alpha c; <x,x> = <a,a> + <c,c> - 2 Re(alpha <a,c>) on |alpha| = 1
    const auto& H = b.space;
    Vec3 a = H.box(b.q, b.focus), c = H.box(b.p, b.focus);
    double s = 0.5 * (H.norm(a) + H.norm(c));
    cplx w = H.inner(a, c);
    double ratio = s / std::abs(w);
    if (std::abs(ratio) >= 1) return {};
    double base = std::acos(ratio), om = std::arg(w);
    std::vector<Vec3> out;
    for (double t : {base - om, -base - om}) out.push_back(normalized(a - std::polar(1.0, t) * c));
    return out;
}

bool line_frame(const HermitianSpace& H, const Line& L, Vec3& eneg, Vec3& epos)
{
    auto basis = line_basis(H, L);
    Eigen::Matrix2cd G;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) G(i, j) = H.inner(basis[i], basis[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(G);
    auto ev = es.eigenvalues();
    if (!(ev(0) < -1e-12 && ev(1) > 1e-12)) return false;
    auto V = es.eigenvectors();
    eneg = (V(0, 0) * basis[0] + V(1, 0) * basis[1]) / std::sqrt(-ev(0));
    epos = (V(0, 1) * basis[0] + V(1, 1) * basis[1]) / std::sqrt(ev(1));
    return true;
}

std::vector<Vec3> slice_points(const Bisector& b, cplx alpha, int rings, int per_ring)
{
    Vec3 eneg, epos;
    if (!line_frame(b.space, Line{Vec3(b.q - alpha * b.p)}, eneg, epos)) return {};
    std::vector<Vec3> out;
    for (int k = 1; k <= rings; ++k) {
        double rad = static_cast<double>(k) / rings;
        for (int j = 0; j < per_ring; ++j) out.push_back(eneg + std::polar(rad, 2 * pi * j / per_ring) * epos);
    }
    return out;
}

std::vector<Vec3> spinal_points(const Bisector& b, int n_alpha, int n_w)
{
    std::vector<Vec3> out;
    for (int i = 0; i < n_alpha; ++i) {
        Vec3 eneg, epos;
        if (!line_frame(b.space, Line{Vec3(b.q - std::polar(1.0, 2 * pi * (i + 0.5) / n_alpha) * b.p)}, eneg, epos))
            continue;
        for (int j = 0; j < n_w; ++j) out.push_back(eneg + std::polar(1.0, 2 * pi * j / n_w) * epos);
    }
    return out;
}

}  // namespace crlab
