#include "crlab/visual_sphere.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace crlab {

using std::numbers::pi;

ExtC ext_div(cplx num, cplx den)
{
    if (std::abs(den) <= 1e-12 * std::abs(num)) return ExtC::infinity();
    return {num / den, false};
}

namespace {

Eigen::Vector3d to_sphere(const ExtC& w)
{
    if (w.inf) return {0, 0, 1};
    double n = std::norm(w.z);
    return Eigen::Vector3d(2 * w.z.real(), 2 * w.z.imag(), n - 1) / (n + 1);
}

}  // namespace

double chordal(const ExtC& a, const ExtC& b) { return (to_sphere(a) - to_sphere(b)).norm(); }

ExtC Mobius::operator()(const ExtC& w) const
{
    if (w.inf) return ext_div(m(0, 0), m(1, 0));
    return ext_div(m(0, 0) * w.z + m(0, 1), m(1, 0) * w.z + m(1, 1));
}

Mobius Mobius::inverse() const
{
    Eigen::Matrix2cd a;
    a << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return {a};
}

namespace {

// z1, z2, z3 -> 0, 1, infinity
Eigen::Matrix2cd to_standard(const std::array<ExtC, 3>& z)
{
    Eigen::Matrix2cd t;
    const cplx z1 = z[0].z, z2 = z[1].z, z3 = z[2].z;
    if (z[0].inf)
        t << 0, z2 - z3, 1, -z3;
    else if (z[1].inf)
        t << 1, -z1, 1, -z3;
    else if (z[2].inf)
        t << 1, -z1, 0, z2 - z1;
    else
        t << z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1);
    return t;
}

void check_distinct(const std::array<ExtC, 3>& z)
{
    for (int i = 0; i < 3; ++i)
        if (chordal(z[i], z[(i + 1) % 3]) < 1e-12) throw std::invalid_argument("Mobius: repeated points");
}

}  // namespace

Mobius Mobius::from_points(const std::array<ExtC, 3>& z, const std::array<ExtC, 3>& w)
{
    check_distinct(z);
    check_distinct(w);
    Mobius a{to_standard(z)}, b{to_standard(w)};
    Mobius r = b.inverse() * a;
    r.m /= std::sqrt(r.m.determinant());
    return r;
}

VisualChart make_chart(const HermitianSpace& H, const Vec3& base, const Vec3& p1, const Vec3& p2)
{
    auto ortho = [&](const Vec3& v) { return std::abs(H.inner(v, base)) <= kProjTol * v.norm() * base.norm(); };
    if (!ortho(p1) || !ortho(p2)) throw std::invalid_argument("make_chart: chart points must be orthogonal to the base");
    if (proj_equal(p1, p2)) throw std::invalid_argument("make_chart: chart points coincide");
    return {H, base, p1, p2};
}

ExtC chart_value(const VisualChart& c, const Vec3& q)
{
    if (proj_equal(q, c.base, 1e-10)) throw std::invalid_argument("chart_value: point equals the base");
    return ext_div(c.space.inner(c.p1, q), c.space.inner(c.p2, q));
}

namespace {

const std::array<Vec3, 6>& probes()
{
    static const std::array<Vec3, 6> v = {
        Vec3(cplx(0.3, 0.1), cplx(1, -0.2), cplx(-0.4, 0.7)),   Vec3(cplx(-0.6, 0.5), cplx(0.2, 0.9), cplx(1.1, -0.3)),
        Vec3(cplx(0.8, -0.7), cplx(-0.5, 0.4), cplx(0.1, 0.2)), Vec3(cplx(1.3, 0.2), cplx(0.6, 0.6), cplx(-0.9, -0.1)),
        Vec3(cplx(-0.2, -1.1), cplx(0.7, 0.3), cplx(0.5, 0.5)), Vec3(cplx(0.4, 0.4), cplx(-1.2, 0.1), cplx(0.3, -0.8)),
    };
    return v;
}

// Three probe points with distinct, finite values in chart c.
std::array<Vec3, 3> pick_probes(const VisualChart& c)
{
    std::vector<Vec3> out;
    std::vector<ExtC> vals;
    for (const auto& v : probes()) {
        if (proj_equal(v, c.base, 1e-6)) continue;
        ExtC w = chart_value(c, v);
        if (w.inf) continue;
        bool ok = true;
        for (const auto& u : vals) ok = ok && chordal(w, u) > 1e-6;
        if (!ok) continue;
        out.push_back(v);
        vals.push_back(w);
        if (out.size() == 3) return {out[0], out[1], out[2]};
    }
    throw std::runtime_error("chart probes degenerate");
}

}  // namespace

Mobius induced_action(const VisualChart& c, const Mat3& g)
{
    if (!proj_equal(g * c.base, c.base, 1e-8)) throw std::invalid_argument("induced_action: isometry moves the base");
    auto q = pick_probes(c);
    std::array<ExtC, 3> a, b;
    for (int k = 0; k < 3; ++k) {
        a[k] = chart_value(c, q[k]);
        b[k] = chart_value(c, g * q[k]);
    }
    return Mobius::from_points(a, b);
}

Mobius chart_change(const VisualChart& from, const VisualChart& to)
{
    if (!proj_equal(from.base, to.base)) throw std::invalid_argument("chart_change: charts at different points");
    auto q = pick_probes(from);
    std::array<ExtC, 3> a, b;
    for (int k = 0; k < 3; ++k) {
        a[k] = chart_value(from, q[k]);
        b[k] = chart_value(to, q[k]);
    }
    return Mobius::from_points(a, b);
}

bool tangency_check(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r)
{
    const double sp = p.norm(), sr = r.norm();
    cplx pq = H.inner(p, q);
    if (std::abs(pq.imag()) > kTol * sp * q.norm() || std::abs(pq) <= kTol * sp * q.norm())
        throw std::invalid_argument("tangency_check: <p,q> must be real and nonzero");
    if (std::abs(H.norm(p) - H.norm(q)) > kTol * std::max(1.0, sp * sp))
        throw std::invalid_argument("tangency_check: p and q have different norms");
    if (H.locate(r) != Location::Boundary) throw std::invalid_argument("tangency_check: r is not a boundary point");
    cplx pr = H.inner(p, r), qr = H.inner(q, r);
    if (std::abs(std::abs(pr) - std::abs(qr)) > kProjTol * sp * sr)
        throw std::invalid_argument("tangency_check: r is not on the spinal surface");
    for (double e : {1.0, -1.0}) {
        if (std::abs(pr - e * qr) > kProjTol * sp * sr) continue;
        if (std::abs(std::conj(pq) - e * H.norm(p)) > kProjTol * sp * sp) return true;
    }
    return false;
}

int crossing_count(const HermitianSpace& H, const Vec3& p, const Vec3& q, const Vec3& r, int n)
{
    Vec3 eneg, epos;
    if (!line_frame(H, Line{H.box(p, r)}, eneg, epos)) return -1;
    cplx a = -H.inner(eneg, r), b = H.inner(epos, r);
    double t0 = std::arg(b / a);
    Vec3 pn = p.normalized(), qn = q / p.norm();
    int changes = 0, first = 0, prev = 0;
    for (int k = 0; k < n; ++k) {
        Vec3 z = eneg + std::polar(1.0, t0 + 2 * pi * (k + 0.5) / n) * epos;
        double F = std::norm(H.inner(pn, z)) - std::norm(H.inner(qn, z));
        int s = F > 0 ? 1 : -1;
        if (k == 0)
            first = s;
        else if (s != prev)
            ++changes;
        prev = s;
    }
    if (prev != first) ++changes;
    return changes;
}

GenCircle circle_through(const std::array<ExtC, 3>& pts)
{
    GenCircle c;
    std::vector<cplx> fin;
    for (const auto& w : pts)
        if (!w.inf) fin.push_back(w.z);
    if (fin.size() < 3) {
        c.line = true;
        c.point = fin[0];
        c.dir = (fin[1] - fin[0]) / std::abs(fin[1] - fin[0]);
        return c;
    }
    cplx a = fin[0], b = fin[1] - a, d = fin[2] - a;
    double cr = (std::conj(b) * d).imag();
    double scale = std::abs(b) * std::abs(d);
    if (std::abs(cr) <= 1e-12 * scale) {
        c.line = true;
        c.point = a;
        c.dir = b / std::abs(b);
        return c;
    }
    // circumcenter of 0, b, d, shifted by a
    cplx center = cplx(0, -1) * (std::norm(b) * d - std::norm(d) * b) / (2 * cr);
    c.center = a + center;
    c.radius = std::abs(center);
    return c;
}

double circle_distance(const GenCircle& c, const ExtC& w)
{
    if (w.inf) return c.line ? 0 : std::numeric_limits<double>::infinity();
    if (c.line) return std::abs((std::conj(c.dir) * (w.z - c.point)).imag());
    return std::abs(std::abs(w.z - c.center) - c.radius);
}

double projection_radius_sq(const Bisector& b, cplx alpha)
{
    const auto& H = b.space;
    Vec3 qt = b.q - (H.inner(b.p, b.q) / H.norm(b.p)) * b.p;
    Vec3 x = H.box(b.q - alpha * b.p, b.focus);
    double den = std::norm(H.inner(qt, x));
    if (den == 0) return std::numeric_limits<double>::infinity();
    return -H.norm(x) * H.norm(b.focus) / den;
}

namespace {

// Extremum of m over the unit circle: 4096-point scan then golden refinement.
double extremal_radius_sq(const Bisector& b, bool maximize)
{
    const int N = 4096;
    auto m = [&](double t) {
        double v = projection_radius_sq(b, std::polar(1.0, t));
        if (!std::isfinite(v)) return maximize ? -std::numeric_limits<double>::infinity() : v;
        return maximize ? v : -v;
    };
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < N; ++k) {
        double v = m(2 * pi * k / N);
        if (v > bv) {
            bv = v;
            best = k;
        }
    }
    double lo = 2 * pi * (best - 1) / N, hi = 2 * pi * (best + 1) / N;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo), f1 = m(x1), f2 = m(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = m(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = m(x1);
        }
    }
    double v = std::max({bv, f1, f2});
    return maximize ? v : -v;
}

// Adapted frame of a fan: chart <g,z>/<f,z> in which the image is {Re w <= -1/8}.
VisualChart fan_chart(const Bisector& b)
{
    const auto& H = b.space;
    double np = H.norm(b.p);
    if (!(np > 0)) throw std::invalid_argument("project_bisector: fan with non-positive base");
    Vec3 p = b.p / std::sqrt(np), q = b.q / std::sqrt(np);
    Vec3 f = b.focus;
    cplx bb = H.inner(p, q);
    Vec3 rest = q - bb * p;
    int i;
    f.cwiseAbs().maxCoeff(&i);
    cplx a = rest(i) / f(i);
    auto basis = line_basis(H, Line{b.p});
    Vec3 h = proj_distance(basis[0], f) > proj_distance(basis[1], f) ? basis[0] : basis[1];
    Vec3 g = h / H.inner(f, h);
    g -= 0.5 * H.norm(g) * f;
    Vec3 f2 = -a * f, g2 = g / std::conj(-a);
    return {H, b.p, g2, f2};
}

}  // namespace

bool DiskDescriptor::contains_privileged(const ExtC& w, double tol) const
{
    return margin_privileged(w) >= -tol;
}

double DiskDescriptor::margin_privileged(const ExtC& w) const
{
    switch (kind) {
    case BisectorKind::MetricBisector:
        if (w.inf) return -std::numeric_limits<double>::infinity();
        return (radius - std::abs(w.z)) / radius;
    case BisectorKind::CliffordCone:
        if (w.inf) return std::numeric_limits<double>::infinity();
        return (std::abs(w.z) - radius) / radius;
    case BisectorKind::Fan:
        if (w.inf) return std::numeric_limits<double>::infinity();
        return -0.125 - w.z.real();
    }
    return 0;
}

bool DiskDescriptor::contains(const ExtC& w_target, double tol) const
{
    return contains_privileged(to_target.inverse()(w_target), tol);
}

bool DiskDescriptor::contains_line_through(const Vec3& z, double tol) const
{
    return contains_privileged(chart_value(privileged, z), tol);
}

DiskDescriptor project_bisector(const VisualChart& target, const Bisector& b, int samples)
{
    if (!proj_equal(target.base, b.p)) throw std::invalid_argument("project_bisector: bisector not based at the chart point");
    const auto& H = b.space;
    double np = H.norm(b.p);
    if (std::abs(np) <= kTol * b.p.squaredNorm()) throw std::invalid_argument("project_bisector: isotropic base point");
    DiskDescriptor d;
    d.kind = b.kind;
    d.target = target;
    std::vector<ExtC> priv;
    if (b.kind == BisectorKind::Fan) {
        d.privileged = fan_chart(b);
        d.radius = -0.125;
        for (int k = 0; k < samples; ++k) {
            double th = -pi + 2 * pi * (k + 0.5) / samples;
            priv.push_back({cplx(-0.125, std::tan(th / 2)), false});
        }
    } else {
        Vec3 qt = b.q - (H.inner(b.p, b.q) / np) * b.p;
        d.privileged = {H, b.p, b.focus, qt};
        d.radius = std::sqrt(extremal_radius_sq(b, b.kind == BisectorKind::MetricBisector));
        for (int k = 0; k < samples; ++k) priv.push_back({std::polar(d.radius, 2 * pi * k / samples), false});
    }
    d.to_target = chart_change(d.privileged, target);
    for (const auto& w : priv) d.boundary.push_back(d.to_target(w));
    const int n = static_cast<int>(priv.size());
    d.boundary_circle = circle_through({d.boundary[0], d.boundary[n / 3], d.boundary[(2 * n) / 3]});
    return d;
}

double hyperbolic_distance(const HermitianSpace& H, const Vec3& p, const Vec3& q)
{
    if (H.locate(p) != Location::Inside || H.locate(q) != Location::Inside)
        throw std::invalid_argument("hyperbolic_distance: points must be inside");
    double c2 = std::norm(H.inner(p, q)) / (H.norm(p) * H.norm(q));
    return 2 * std::acosh(std::sqrt(std::max(1.0, c2)));
}

double angular_diameter(const HermitianSpace& H, const Vec3& p, const Vec3& q)
{
    double d = hyperbolic_distance(H, p, q);
    return 2 * std::acos(std::tanh(d / 4));
}

double spine_angular_diameter(const HermitianSpace& H, const Vec3& p, const Vec3& q)
{
    double d = hyperbolic_distance(H, p, q);
    return 2 * std::acos(std::tanh(d / 2));
}

double angle_at(const HermitianSpace& H, const Vec3& p, const Vec3& a, const Vec3& b)
{
    double np = H.norm(p);
    Vec3 da = p / np - a / H.inner(p, a), db = p / np - b / H.inner(p, b);
    double c = H.inner(da, db).real() / std::sqrt(H.norm(da) * H.norm(db));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

AngularSample angular_oracle(const HermitianSpace& H, const Vec3& p, const Vec3& q, int n, int workers)
{
    auto b = classify_bisector(H, p, q);
    std::vector<Vec3> pts;
    for (int na = 64;; na *= 2) {
        pts = spinal_points(b, na, 50);
        if (static_cast<int>(pts.size()) >= n || na > (1 << 16)) break;
    }
    // evenly spread subset of exactly n points
    std::vector<Vec3> dirs;
    const double np = H.norm(p);
    const size_t m = std::min(pts.size(), static_cast<size_t>(n));
    for (size_t k = 0; k < m; ++k) {
        const Vec3& z = pts[k * pts.size() / m];
        Vec3 d = p / np - z / H.inner(p, z);
        dirs.push_back(d / std::sqrt(H.norm(d)));
    }
    AngularSample out;
    out.samples = static_cast<int>(m);
    for (const auto& z : dirs) {
        Vec3 dq = p / np - q / H.inner(p, q);
        double c = H.inner(dq, z).real() / std::sqrt(H.norm(dq));
        out.max_from_axis = std::max(out.max_from_axis, std::acos(std::clamp(c, -1.0, 1.0)));
    }
    // smallest pairwise cosine, one slot per row
    std::vector<double> rowmin(m, 1.0);
    kernels::parallel_for(
        static_cast<long>(m),
        [&](long i) {
            double best = 1.0;
            for (size_t j = static_cast<size_t>(i) + 1; j < m; ++j) best = std::min(best, H.inner(dirs[i], dirs[j]).real());
            rowmin[i] = best;
        },
        workers);
    double cmin = *std::min_element(rowmin.begin(), rowmin.end());
    out.max_pairwise = std::acos(std::clamp(cmin, -1.0, 1.0));
    return out;
}

}  // namespace crlab
