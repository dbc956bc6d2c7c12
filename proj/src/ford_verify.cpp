#include "crlab/ford_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "crlab/kernels.hpp"

namespace crlab {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

cplx ei(double t) { return std::polar(1.0, t); }

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

CheckItem identity(std::string name, double residual, double tol, long samples = 1, std::string detail = {})
{
    CheckItem it;
    it.name = std::move(name);
    it.value = residual;
    it.margin = tol - residual;
    it.pass = residual <= tol;
    it.samples = samples;
    it.detail = std::move(detail);
    return it;
}

CheckItem positive(std::string name, double value, double margin, long samples = 1, std::string detail = {},
                   bool required = true)
{
    CheckItem it;
    it.name = std::move(name);
    it.value = value;
    it.margin = margin;
    it.pass = margin > 0;
    it.required = required;
    it.samples = samples;
    it.detail = std::move(detail);
    return it;
}

CheckItem flag(std::string name, bool ok, std::string detail = {}, bool required = true)
{
    CheckItem it;
    it.name = std::move(name);
    it.pass = ok;
    it.value = ok ? 1 : 0;
    it.margin = ok ? 1 : -1;
    it.required = required;
    it.detail = std::move(detail);
    return it;
}

// min over finite entries; +inf when there are none
double finite_min(const std::vector<double>& v, long& count)
{
    double m = std::numeric_limits<double>::infinity();
    count = 0;
    for (double x : v)
        if (!std::isnan(x)) {
            m = std::min(m, x);
            ++count;
        }
    return m;
}

std::string join_ints(const std::vector<int>& v)
{
    std::ostringstream s;
    for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
}

// Normalized |<z,p>|^2 - |<z,c>|^2, maximized over the constraint vectors: positive
// when [z] violates at least one face inequality |<z,p>| <= |<z,c>|.
double face_violation(const HermitianSpace& H, const Vec3& z, const Vec3& p, const std::vector<Vec3>& cons)
{
    double a = std::norm(H.inner(z, p));
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& c : cons) m = std::max(m, a - std::norm(H.inner(z, c)));
    return m / (z.squaredNorm() * p.squaredNorm());
}

bool near_any(const Vec3& z, const std::vector<Vec3>& pts, double radius)
{
    for (const auto& q : pts)
        if (proj_distance(z, q) < radius) return true;
    return false;
}

// Face-pair scan on an intersection torus: the negative-norm cells away from the
// expected vertices must violate some face inequality.
struct PairScan {
    double min_violation = 0;
    long negatives = 0;
};

template <class Sampler>
PairScan pair_scan(int n, int workers, Sampler&& point, const HermitianSpace& H, const Vec3& p,
                   const std::vector<Vec3>& cons, const std::vector<Vec3>& vertices)
{
    auto vals = kernels::grid(
        n, n,
        [&](int i, int j) {
            Vec3 z = point(i, j);
            double s = z.squaredNorm();
            if (s < 1e-24) return nan_v;
            if (H.norm(z) / s > 0) return nan_v;
            if (near_any(z, vertices, 0.05)) return nan_v;
            return face_violation(H, z, p, cons);
        },
        workers);
    PairScan out;
    out.min_violation = finite_min(vals, out.negatives);
    return out;
}

// Covector of z -> |<z,p>|^2 - |<z,q>|^2 at z0 as the complex vector w with
// dF[h] = 2 Re sum conj(h_i) w_i.
Vec3 covector(const HermitianSpace& H, const Vec3& z0, const Vec3& p, const Vec3& q)
{
    return std::conj(H.inner(z0, p)) * (H.J() * p) - std::conj(H.inner(z0, q)) * (H.J() * q);
}

Eigen::VectorXd real6(const Vec3& w)
{
    Eigen::VectorXd r(6);
    for (int i = 0; i < 3; ++i) {
        r(i) = w(i).real();
        r(i + 3) = w(i).imag();
    }
    return r / r.norm();
}

Eigen::VectorXd singular_values(const std::vector<Vec3>& rows)
{
    Eigen::MatrixXd M(rows.size(), 6);
    for (size_t i = 0; i < rows.size(); ++i) M.row(i) = real6(rows[i]).transpose();
    return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();
}

struct Bitangency {
    double tangency = 0;      // sigma_4 / sigma_1 of the four covectors
    double transversal = 0;   // smallest sigma_3 / sigma_1 over the pairs
};

// Two Giraud circles on the spinal sphere of B(p, q0), cut by B(p, q1) and B(p, q2),
// at a common boundary point z0.
Bitangency bitangency(const HermitianSpace& H, const Vec3& z0, const Vec3& p, const Vec3& q0, const Vec3& q1,
                      const Vec3& q2)
{
    Vec3 g = H.J() * z0;
    Vec3 c0 = covector(H, z0, p, q0), c1 = covector(H, z0, p, q1), c2 = covector(H, z0, p, q2);
    Bitangency b;
    auto s = singular_values({g, c0, c1, c2});
    b.tangency = s(3) / s(0);
    auto s01 = singular_values({g, c0, c1});
    auto s02 = singular_values({g, c0, c2});
    b.transversal = std::min(s01(2) / s01(0), s02(2) / s02(0));
    return b;
}

// Raw (unnormalized) miss margin; the sign is the statement, the scale is |z0|^2.
double raw_miss_margin(const VisualChart& c, const Bisector& b, const ExtC& w, double* scale = nullptr)
{
    const auto& H = c.space;
    Mat3 A;
    A.row(0) = (H.J().adjoint() * c.base).adjoint();
    A.row(1) = (H.J().adjoint() * c.p1).adjoint();
    A.row(2) = (H.J().adjoint() * c.p2).adjoint();
    Vec3 rhs = w.inf ? Vec3(0, 1, 0) : Vec3(0, w.z, 1);
    Vec3 z0 = A.fullPivLu().solve(rhs);
    const double N = H.norm(c.base);
    const double P = std::abs(H.inner(c.base, b.q));
    const double X2 = std::norm(H.inner(z0, b.q));
    const double G = H.norm(z0);
    if (scale) *scale = z0.squaredNorm();
    if (N > 0) return X2 / ((N + P) * (N + P)) + G / N;
    const double gap = P - std::abs(N);
    if (std::abs(gap) <= 1e-14 * P) return -std::numeric_limits<double>::infinity();
    return G / std::abs(N) - X2 / (gap * gap);
}

struct CircleCert {
    double min_margin = 0;   // exact minimum over the circle, relative
    double fit_residual = 0; // sampled check of the harmonic form
};

// On |w| = R the raw margin is C0 + Re(Z e^{i t}) exactly.
CircleCert circle_certificate(const VisualChart& c, const Bisector& b, double R, int checks)
{
    double m0 = raw_miss_margin(c, b, {cplx(R, 0)});
    double m1 = raw_miss_margin(c, b, {cplx(0, R)});
    double m2 = raw_miss_margin(c, b, {cplx(-R, 0)});
    double C0 = (m0 + m2) / 2;
    cplx Z((m0 - m2) / 2, -(m1 - C0));
    double scale = std::abs(C0) + std::abs(Z);
    CircleCert out;
    out.min_margin = (C0 - std::abs(Z)) / scale;
    for (int k = 0; k < checks; ++k) {
        double t = 2 * pi * (k + 0.5) / checks;
        double fit = C0 + (Z * ei(t)).real();
        out.fit_residual = std::max(out.fit_residual, std::abs(fit - raw_miss_margin(c, b, {std::polar(R, t)})) / scale);
    }
    return out;
}

struct RayCert {
    double min_margin = 0;  // exact minimum over k in [0, inf], relative
    double a = 0, b = 0, c = 0;
    double fit_residual = 0;
};

// On w = k e^{i phi} the raw margin is a k^2 + b k + c exactly.
RayCert ray_certificate(const VisualChart& ch, const Bisector& bis, double phi, int checks)
{
    double m0 = raw_miss_margin(ch, bis, {cplx(0)});
    double m1 = raw_miss_margin(ch, bis, {ei(phi)});
    double m2 = raw_miss_margin(ch, bis, {2.0 * ei(phi)});
    RayCert r;
    r.c = m0;
    r.a = (m2 - 2 * m1 + m0) / 2;
    r.b = m1 - m0 - r.a;
    double scale = std::abs(r.a) + std::abs(r.b) + std::abs(r.c);
    double mn;
    if (r.a <= 0)
        mn = std::min(r.c, r.a);  // negative leading coefficient: the ray meets the bisector far out
    else if (r.b >= 0)
        mn = std::min(r.c, r.a);
    else
        mn = std::min({r.c - r.b * r.b / (4 * r.a), r.a});
    r.min_margin = mn / scale;
    for (int k = 0; k < checks; ++k) {
        double t = std::pow(10.0, -3 + 6.0 * k / std::max(1, checks - 1));
        double fit = (r.a * t + r.b) * t + r.c;
        double val = raw_miss_margin(ch, bis, {t * ei(phi)});
        r.fit_residual = std::max(r.fit_residual, std::abs(fit - val) / (scale * (1 + t * t)));
    }
    return r;
}

// Random points of the closed bisector: slice points at random slice angles.
std::vector<Vec3> bisector_samples(const Bisector& b, int n, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Vec3> out;
    for (int tries = 0; static_cast<int>(out.size()) < n && tries < 100 * n; ++tries) {
        cplx alpha = ei(2 * pi * U(rng));
        Vec3 eneg, epos;
        if (!line_frame(b.space, Line{Vec3(b.q - alpha * b.p)}, eneg, epos)) continue;
        double r = std::sqrt(U(rng));
        out.push_back(eneg + std::polar(r, 2 * pi * U(rng)) * epos);
    }
    return out;
}

struct DiskTangency {
    double on_circles = 0;  // distance of the point to both boundary circles, relative
    double overlap = 0;     // largest inside-margin of one boundary seen from the other disk
};

double signed_margin(const DiskDescriptor& d, const ExtC& w_target)
{
    return d.margin_privileged(d.to_target.inverse()(w_target));
}

DiskTangency disk_tangency(const DiskDescriptor& d0, const DiskDescriptor& d1, const ExtC& w)
{
    DiskTangency t;
    auto circ = [&](const DiskDescriptor& d) {
        double s = d.boundary_circle.line ? 1.0 : std::max(1.0, d.boundary_circle.radius);
        return circle_distance(d.boundary_circle, w) / s;
    };
    t.on_circles = std::max(circ(d0), circ(d1));
    t.overlap = -std::numeric_limits<double>::infinity();
    for (const auto& b : d1.boundary) t.overlap = std::max(t.overlap, signed_margin(d0, b));
    for (const auto& b : d0.boundary) t.overlap = std::max(t.overlap, signed_margin(d1, b));
    return t;
}

// Disjointness evidence for two closed bisectors based at the same point.
struct PairEvidence {
    ExtorPairKind kind = ExtorPairKind::Unbalanced;
    double margin = 0;  // positive when disjoint
    long samples = 0;
    std::string detail;
};

PairEvidence disjoint_evidence(const Bisector& b1, const Bisector& b2, int grid, int workers)
{
    PairEvidence e;
    const auto& H = b1.space;
    e.kind = classify_pair(b1, b2);
    e.detail = to_string(e.kind);
    if (e.kind == ExtorPairKind::Unbalanced) {
        GiraudTorus T(H, b1.p, b1.q, b2.q);
        const double h = 2 * pi / grid;
        auto vals = kernels::grid(
            grid, grid,
            [&](int i, int j) {
                auto s = T.sample(h * i, h * j);
                double n2 = s.point.squaredNorm();
                return n2 < 1e-24 ? nan_v : s.norm / n2;
            },
            workers);
        e.margin = finite_min(vals, e.samples);
        e.detail += ": minimum of the normalized norm on the intersection torus";
        return e;
    }
    // Same focus or balanced: the extors share slices.  Sample b1 (interior and
    // boundary) and require |<z,p>|^2 - |<z,q2>|^2 to keep a strict sign.
    auto pts = bisector_samples(b1, grid * 4, 7);
    auto sp = spinal_points(b1, grid / 2, 64);
    pts.insert(pts.end(), sp.begin(), sp.end());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& z : pts) {
        double v = (std::norm(H.inner(z, b2.p)) - std::norm(H.inner(z, b2.q))) / (z.squaredNorm() * b2.p.squaredNorm());
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    e.samples = static_cast<long>(pts.size());
    e.margin = lo > 0 ? lo : (hi < 0 ? -hi : -std::min(-lo, hi));
    e.detail += ": sign of the second bisector's equation on sampled points of the first";
    return e;
}

void annulus_candidates(double l, long K, std::vector<int>& plus, std::vector<int>& minus)
{
    // log|w| / l intervals: D_k^+ in (2k - 5/2, 2k + 3/2), D_k^- in (2k - 3/2, 2k + 5/2)
    const double a0 = -2.5, b0 = 1.5;
    for (long k = -K; k <= K; ++k) {
        double ap = 2.0 * k - 2.5, bp = 2.0 * k + 1.5;
        double am = 2.0 * k - 1.5, bm = 2.0 * k + 2.5;
        if (ap < b0 && a0 < bp) plus.push_back(static_cast<int>(k));
        if (am < b0 && a0 < bm) minus.push_back(static_cast<int>(k));
    }
    (void)l;
}

}  // namespace

CheckItem& CheckResult::add(CheckItem it)
{
    items.push_back(std::move(it));
    return items.back();
}

void CheckResult::finish()
{
    pass = ran;
    for (const auto& it : items)
        if (it.required && !it.pass) pass = false;
}

double CheckResult::worst_margin() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& it : items)
        if (it.required) m = std::min(m, it.margin);
    return m;
}

Mat3 FaceFamily::Upow(int k) const
{
    Mat3 M = Mat3::Identity();
    const Mat3& g = k >= 0 ? rep.U : Uinv;
    for (int i = 0; i < std::abs(k); ++i) M = M * g;
    return M;
}

Bisector FaceFamily::plus(int k) const { return classify_bisector(rep.space, pts.pU, Uk(k, pts.pV)); }
Bisector FaceFamily::minus(int k) const { return classify_bisector(rep.space, pts.pU, Uk(k, pts.pW)); }

FaceFamily make_family(double alpha2)
{
    if (!(alpha2 > 0 && alpha2 < pi / 2)) throw std::invalid_argument("alpha2 must lie in (0, pi/2)");
    FaceFamily f;
    f.alpha2 = alpha2;
    f.side = param_side(alpha2);
    f.rep = build_rep({0, alpha2});
    f.pts = remarkable_points({0, alpha2});
    f.Uinv = f.rep.iso(f.rep.U).inverse().M();
    return f;
}

VisualChart pw_chart(const FaceFamily& f)
{
    if (!f.pts.pU1 || !f.pts.pU2 || f.side.kind == SideKind::Unipotent)
        throw std::invalid_argument("pw_chart: U is unipotent");
    if (f.side.kind == SideKind::Elliptic) return make_chart(f.space(), f.pts.pU, *f.pts.pU1, *f.pts.pU2);
    return make_chart(f.space(), f.pts.pU, *f.pts.pU2, *f.pts.pU1);
}

double line_miss_margin(const VisualChart& c, const Bisector& b, const ExtC& w)
{
    if (!proj_equal(c.base, b.p)) throw std::invalid_argument("line_miss_margin: bisector not based at the chart point");
    double scale = 1;
    double m = raw_miss_margin(c, b, w, &scale);
    return m / scale;
}

CheckResult incidence_check(const FaceFamily& f, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "incidence";
    r.ran = true;
    const auto& H = f.space();
    const auto& P = f.pts;
    const double a = f.alpha2;
    const Vec3 UpV = f.Uk(1, P.pV), UipV = f.Uk(-1, P.pV), UipW = f.Uk(-1, P.pW);
    struct Prod {
        const char* name;
        Vec3 x, y;
        cplx expected;
    };
    const Prod prods[] = {
        {"<pA,pU>", P.pA, P.pU, ei(2 * a)},      {"<pA,pV>", P.pA, P.pV, -1.0},
        {"<pA,pW>", P.pA, P.pW, ei(2 * a)},      {"<pA,U^-1 pV>", P.pA, UipV, ei(2 * a)},
        {"<pA,U^-1 pW>", P.pA, UipW, -1.0},      {"<pB,pU>", P.pB, P.pU, 1.0},
        {"<pB,pV>", P.pB, P.pV, -ei(2 * a)},    {"<pB,pW>", P.pB, P.pW, -ei(2 * a)},
        {"<pB,U pV>", P.pB, UpV, 1.0},           {"<pB,U^-1 pW>", P.pB, UipW, 1.0},
    };
    double worst_mod = 0, worst_val = 0;
    for (const auto& p : prods) {
        cplx v = H.inner(p.x, p.y);
        worst_mod = std::max(worst_mod, std::abs(std::abs(v) - 1));
        worst_val = std::max(worst_val, std::abs(v - p.expected));
    }
    r.add(identity("unit_modulus_products", worst_mod, o.tol, 10, "ten products of pA, pB with the bisector points"));
    r.add(identity("product_values", worst_val, o.tol, 10, "closed-form values of the same products"));

    // Corollary: J_k^+ contains U^k pA, U^{k+1} pA, U^k pB, U^{k-1} pB and
    // J_k^- contains U^k pA, U^{k+1} pA, U^k pB, U^{k+1} pB.
    double worst = 0;
    long count = 0;
    for (int k = -3; k <= 3; ++k) {
        auto bp = f.plus(k), bm = f.minus(k);
        for (const auto& z : {f.Uk(k, P.pA), f.Uk(k + 1, P.pA), f.Uk(k, P.pB), f.Uk(k - 1, P.pB)}) {
            worst = std::max(worst, std::abs(membership(bp, z).residual));
            ++count;
        }
        for (const auto& z : {f.Uk(k, P.pA), f.Uk(k + 1, P.pA), f.Uk(k, P.pB), f.Uk(k + 1, P.pB)}) {
            worst = std::max(worst, std::abs(membership(bm, z).residual));
            ++count;
        }
    }
    r.add(identity("translated_incidences", worst, o.tol, count, "k = -3..3"));

    // J_k = U^k J_0 and I J_k^+ = J_{-k}^-, on sampled bisector points
    const Mat3 I = involution_I(a);
    double wt = 0, ws = 0;
    long ns = 0;
    auto b0p = f.plus(0), b0m = f.minus(0);
    auto s0p = bisector_samples(b0p, 64, 11), s0m = bisector_samples(b0m, 64, 12);
    for (int k = -2; k <= 2; ++k) {
        auto bkp = f.plus(k), bkm = f.minus(k), bmk = f.minus(-k);
        Mat3 Uk = f.Upow(k);
        for (const auto& z : s0p) wt = std::max(wt, std::abs(membership(bkp, Uk * z).residual));
        for (const auto& z : s0m) wt = std::max(wt, std::abs(membership(bkm, Uk * z).residual));
        for (const auto& z : s0p) ws = std::max(ws, std::abs(membership(bmk, I * (Uk * z)).residual));
        ns += static_cast<long>(s0p.size());
    }
    r.add(identity("translation_compatibility", wt, 1e3 * o.tol, ns, "U^k maps J_0 onto J_k, k = -2..2"));
    r.add(identity("involution_symmetry", ws, 1e3 * o.tol, ns, "I maps J_k^+ onto J_-k^-"));
    r.finish();
    return r;
}

CheckResult tf_check(const FaceFamily& f, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "tf";
    r.ran = true;
    const auto& H = f.space();
    const auto& P = f.pts;
    const double a = f.alpha2, c2 = std::cos(a) * std::cos(a), sa = std::sin(a);
    const Vec3 UpV = f.Uk(1, P.pV), UipV = f.Uk(-1, P.pV), UipW = f.Uk(-1, P.pW);
    const double s2 = std::sqrt(2.0);

    // (a) the real plane m = {(r, i sqrt2 s, 1)} ∪ {(r, i sqrt2, 0)} ∪ {pA}
    {
        double id = 0, excl = std::numeric_limits<double>::infinity();
        long inside = 0, n = 0;
        const int m = 201;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double rr = -4 + 8.0 * i / (m - 1), ss = -4 + 8.0 * j / (m - 1);
                Vec3 q(rr, cplx(0, s2 * ss), 1);
                double u = std::norm(H.inner(P.pU, q)), w = std::norm(H.inner(P.pW, q));
                double uf = rr * rr + ss * ss + 1 + 2 * rr * (2 * c2 - 1) + 2 * (rr - 1) * ss * sa;
                double wf = (8 * c2 + 1) * ss * ss + rr * rr + 2 * (rr - 1) * ss * sa - 2 * rr + 1;
                id = std::max({id, rel(u, uf), rel(w, wf), rel(H.norm(q), 2 * ss * ss + 2 * rr),
                               rel(w - u, 4 * c2 * (2 * ss * ss - rr))});
                ++n;
                if (H.norm(q) <= 0 && (i != m / 2 || j != m / 2)) {
                    ++inside;
                    // 2s^2 - r >= 3 s^2 and > 0 off the origin
                    double gap = (w - u) / (4 * c2) - 3 * ss * ss;
                    id = std::max(id, gap < 0 ? -gap : 0.0);
                    excl = std::min(excl, (w - u) / (4 * c2 * (ss * ss + std::abs(rr))));
                }
                Vec3 qr(rr, cplx(0, s2), 0);
                double ur = std::norm(H.inner(P.pU, qr)), wr = std::norm(H.inner(P.pW, qr));
                id = std::max({id, rel(ur, rr * rr + 2 * rr * sa + 1), rel(wr, ur + 8 * c2)});
            }
        r.add(identity("real_plane_identities", id, 1e2 * o.tol, n));
        r.add(positive("real_plane_exclusion", excl, excl, inside,
                       "closed inside points of m other than pB have |<pW,q>| > |<pU,q>|"));
    }
    // (b) the complex line l
    {
        Vec3 pole(sa, cplx(0, -s2 / 2), -sa);
        Vec3 e1(1, 0, 1), e2(-1, cplx(0, 2 * s2 * sa), 1);
        double id = std::max(std::abs(H.inner(pole, e1)), std::abs(H.inner(pole, e2)));
        double rad = std::sqrt(9 - 8 * c2), minnorm = std::numeric_limits<double>::infinity();
        const int m = 720;
        for (int k = 0; k < m; ++k) {
            cplx mu = std::polar(rad, 2 * pi * k / m);
            Vec3 q = e2 + mu * e1;
            double u = std::norm(H.inner(P.pU, q)), w = std::norm(H.inner(P.pW, q)), nq = H.norm(q);
            id = std::max({id, rel(u, 4 * c2 * std::norm(mu)), rel(w, 4 * (9 - 8 * c2) * c2), rel(u, w),
                           rel(nq, 24 * sa * sa), rel(std::norm(H.inner(UipW, q)), w)});
            minnorm = std::min(minnorm, nq / q.squaredNorm());
        }
        r.add(identity("complex_line_identities", id, 1e2 * o.tol, m));
        r.add(positive("complex_line_exclusion", minnorm, minnorm, m, "solution circle lies outside: <q,q> = 24 sin^2 a2"));
    }
    // (c) the torus T = E(pU,pW) ∩ E(pU,U^-1 pW) in the chart (sigma, delta)
    {
        const double d0 = std::atan((1 - 2 * std::cos(2 * a)) / (2 * std::sin(2 * a)));
        auto v = [&](double s, double d) {
            return Vec3(-3.0 * ei(s) - 2.0 * ei(2 * a - d) + ei(d), -2 * s2 * std::cos(a - d),
                        -3.0 * ei(s) - 2.0 * ei(-2 * a + d) + ei(-d));
        };
        auto bW = classify_bisector(H, P.pU, P.pW), bWi = classify_bisector(H, P.pU, UipW);
        Vec3 pole(sa, cplx(0, -s2 / 2), -sa);
        double id = 0, dl = 0, mono = std::numeric_limits<double>::infinity();
        long nmono = 0;
        for (int k = 0; k < 64; ++k) {
            double s = 2 * pi * k / 64, d = d0 + pi * (k % 16) / 16.0 + 0.01;
            Vec3 z = v(s, d);
            id = std::max({id, std::abs(membership(bW, z).residual), std::abs(membership(bWi, z).residual)});
            Vec3 zl = v(s, d0 + pi * (k % 2));
            dl = std::max(dl, std::abs(H.inner(pole, zl)) / (zl.norm() * pole.norm()));
            // dh/dsigma = 2 Re <d(e^{is} v)/ds, e^{is} v> = -12 sin s (2cos(2a - d) - cos d)
            Vec3 dv(-3.0 * cplx(0, 1) * ei(s), 0, -3.0 * cplx(0, 1) * ei(s));
            double dh = 2 * H.inner(dv, z).real();
            double pred = -12 * std::sin(s) * (2 * std::cos(2 * a - d) - std::cos(d));
            id = std::max(id, rel(dh, pred));
        }
        r.add(identity("torus_parametrization", id, 1e3 * o.tol, 64, "membership and the dh/dsigma factorization"));
        r.add(identity("complex_line_locus", dl, 1e3 * o.tol, 64, "delta = delta0 mod pi lies in l"));
        // strict monotonicity of h(., delta1) for delta1 inside the strip
        for (int j = 1; j < 40; ++j) {
            double d = d0 + pi * j / 40.0;
            double coef = 2 * std::cos(2 * a - d) - std::cos(d);
            mono = std::min(mono, coef);
            double prev = H.norm(v(0, d));
            for (int k = 1; k <= 100; ++k) {
                double s = 2 * pi * k / 100;
                double h = H.norm(v(s, d));
                double step = s <= pi + 1e-12 ? prev - h : h - prev;
                mono = std::min(mono, step);
                prev = h;
                ++nmono;
            }
        }
        r.add(positive("monotone_in_sigma", mono, mono, nmono,
                       "h decreasing on [0,pi], increasing on [pi,2pi], for 39 interior delta"));
        // grid evidence replacing the continuity step
        const int n = o.grid;
        auto scan = pair_scan(
            n, o.workers,
            [&](int i, int j) { return Vec3(v(2 * pi * i / n, d0 + pi * (j + 0.5) / n)); }, H, P.pU,
            {P.pV, UpV, UipV}, {P.pA, P.pB});
        r.add(positive("face_exclusion_grid", scan.min_violation, scan.min_violation, scan.negatives,
                       "every closed inside grid point of T away from pA, pB violates a face inequality"));
    }
    // bi-tangency of the two Giraud circles of the face boundary at pA and pB
    for (const auto& [name, z] : {std::pair<const char*, Vec3>{"bitangency_pA", P.pA}, {"bitangency_pB", P.pB}}) {
        auto b = bitangency(H, z, P.pU, P.pV, P.pW, UipW);
        CheckItem it = identity(name, b.tangency, 1e-8, 1, "sigma4/sigma1 of the four covectors");
        if (b.transversal < 1e-6) {
            it.pass = false;
            it.detail += "; degenerate pair";
        }
        it.margin = std::min(it.margin, b.transversal);
        r.add(it);
    }
    r.finish();
    return r;
}

CheckResult lc_check(const FaceFamily& f, const VerifyOptions& o)
{
    CheckResult r;
    r.name = "lc";
    r.ran = true;
    const auto& H = f.space();
    const auto& P = f.pts;
    const double a = f.alpha2, c2 = std::cos(a) * std::cos(a);
    const Vec3 UpV = f.Uk(1, P.pV), UipV = f.Uk(-1, P.pV), UpW = f.Uk(1, P.pW), UipW = f.Uk(-1, P.pW);
    const Vec3 UpA = f.Uk(1, P.pA);

    // Giraud disks J_0^+ ∩ J_0^- and J_0^+ ∩ J_-1^-
    {
        auto st = symmetric_intersection_type(H, P.pU, P.pV, P.pW);
        double u_exact = 2.0 / 3.0 * (4 * c2 - 3);
        r.add(identity("u_value", std::abs(st.u - u_exact), 1e2 * o.tol));
        r.add(positive("u_below_two_thirds", st.u, 2.0 / 3.0 - st.u, 1, "Giraud disk, not a hexagon"));
        const int n = std::max(64, o.grid / 2);
        for (const auto& [name, q2] : {std::pair<const char*, Vec3>{"disk_J0+_J0-", P.pW}, {"disk_J0+_J-1-", UipW}}) {
            GiraudTorus T(H, P.pU, P.pV, q2);
            auto topo = level_set_topology(T.norm_grid(n, o.workers), n);
            bool rec = false;
            auto kind = topology_verdict(topo, rec);
            std::ostringstream d;
            d << "inside components " << topo.inside_components << ", Euler characteristic " << topo.inside_euler;
            r.add(flag(name, rec && kind == SymmetricIntersection::Disk, d.str()));
        }
    }
    // F_0^+ ∩ F_1^+ = {pB, U pA} and F_0^- ∩ F_-1^- = {pA, pB}
    {
        const int n = o.grid;
        const double h = 2 * pi / n;
        GiraudTorus Tp(H, P.pU, P.pV, UpV);
        auto sp = pair_scan(
            n, o.workers, [&](int i, int j) { return Tp.sample(h * i, h * j).point; }, H, P.pU,
            {P.pW, UipW, UpW}, {P.pB, UpA});
        r.add(positive("faces_F0+_F1+", sp.min_violation, sp.min_violation, sp.negatives,
                       "inside cells of J0+ ∩ J1+ away from pB, U pA violate a face inequality"));
        GiraudTorus Tm(H, P.pU, P.pW, UipW);
        auto sm = pair_scan(
            n, o.workers, [&](int i, int j) { return Tm.sample(h * i, h * j).point; }, H, P.pU,
            {P.pV, UpV, UipV}, {P.pA, P.pB});
        r.add(positive("faces_F0-_F-1-", sm.min_violation, sm.min_violation, sm.negatives,
                       "inside cells of J0- ∩ J-1- away from pA, pB violate a face inequality"));
    }
    // the fan parameter: the singular point of the spinal sphere lies inside Q_0^+
    if (std::abs(a - pi / 6) <= 1e-12) {
        const double s2 = std::sqrt(2.0);
        auto q = [&](double t) { return Vec3(1, s2 * ei(t), -1); };
        auto b0 = f.plus(0);
        double id = std::max(proj_distance(b0.focus, q(3 * pi / 2)),
                             std::max(proj_distance(UpA, q(7 * pi / 6)), proj_distance(f.Uk(-1, P.pB), q(11 * pi / 6))));
        const int m = 7200;
        std::vector<uint8_t> in(m);
        for (int k = 0; k < m; ++k) {
            double t = 2 * pi * k / m;
            Vec3 z = q(t);
            double u = std::norm(H.inner(P.pU, z)), w = std::norm(H.inner(P.pW, z)), wi = std::norm(H.inner(UipW, z));
            id = std::max({id, rel(u, 2 * (1 + std::sin(t))), rel(std::norm(H.inner(P.pV, z)), u),
                           rel(w, 6 * std::sqrt(3.0) * std::cos(t) + 2 * std::sin(t) + 11),
                           rel(wi, -6 * std::sqrt(3.0) * std::cos(t) + 2 * std::sin(t) + 11)});
            in[k] = u <= std::min(w, wi) ? 1 : 0;
        }
        r.add(identity("fan_circle_identities", id, 1e2 * o.tol, m));
        // component of the face set containing the focus (t = 3pi/2)
        int kf = 3 * m / 4, lo = kf, hi = kf;
        bool ok = in[kf];
        while (ok && in[(lo - 1 + m) % m] && lo - kf > -m) --lo;
        while (ok && in[(hi + 1) % m] && hi - kf < m) ++hi;
        double tlo = 2 * pi * lo / m, thi = 2 * pi * hi / m;
        double inner_margin = std::min(3 * pi / 2 - tlo, thi - 3 * pi / 2);
        std::ostringstream d;
        d.precision(6);
        d << "focus at 3pi/2 inside [" << tlo << ", " << thi << "], endpoints U pA (7pi/6) and U^-1 pB (11pi/6)";
        bool ends = std::abs(tlo - 7 * pi / 6) <= 4 * pi / m && std::abs(thi - 11 * pi / 6) <= 4 * pi / m;
        r.add(positive("fan_focus_in_quadrilateral", inner_margin, ends && ok ? inner_margin : -1, m, d.str()));
    }
    r.finish();
    return r;
}

CheckResult gc_check_loxodromic(const FaceFamily& f, const VerifyOptions& o)
{
    if (f.side.kind != SideKind::Loxodromic) throw std::invalid_argument("gc_check_loxodromic: U is not loxodromic");
    CheckResult r;
    r.name = "gc";
    r.ran = true;
    const auto& H = f.space();
    const auto& P = f.pts;
    const double l = f.side.l, a = f.alpha2;
    const double ch = std::cosh(l);
    auto chart = pw_chart(f);
    auto b0 = f.plus(0);

    // (b) h1 = <p'_U, p_V>, h2 = <p''_U, p_V>
    {
        cplx h1 = H.inner(*P.pU1, P.pV), h2 = H.inner(*P.pU2, P.pV);
        double c = std::cosh(l / 2);
        double id = std::max({rel(std::norm(h1), 12 * std::exp(l / 2) * (2 * ch + 1) * c),
                              rel(std::norm(h2), 12 * std::exp(-l / 2) * (2 * ch + 1) * c),
                              rel(std::abs(h1) * std::abs(h2), 12 * (2 * ch + 1) * c),
                              rel(h1 * std::conj(h2), 2 * (2 * ch + 1) *
                                                          cplx((5 - 2 * ch) * (ch + 1), -4 * std::sin(2 * a) * std::sinh(l)))});
        r.add(identity("h_identities", id, 1e-8));
        double lhs = 36 * std::pow(2 * ch - 1, 2) * c * c + 64 * std::pow(std::sin(2 * a) * std::sinh(l / 2), 2);
        double rhs = 16 * std::cosh(3 * l) + 16 * std::cosh(2 * l) - 16 * ch + 20;
        r.add(identity("chain_identity", rel(lhs, rhs), 1e-8));
        double chain = 9 * std::cosh(4 * l) + 8 * ch - 8 * std::cosh(3 * l) - 8 * std::cosh(2 * l) - 1;
        double scale = 9 * std::cosh(4 * l);
        bool in_range = a > pi / 6;
        r.add(positive("chain_final", chain, chain / scale, 1, "9cosh4l + 8cosh l - 8cosh3l - 8cosh2l - 1", in_range));
        double c2 = 8 * std::cosh(4 * l) + 8 * ch - 8 * std::cosh(3 * l) - 8 * std::cosh(2 * l);
        r.add(positive("chain_contradiction", c2, c2 / scale, 1, "8cosh4l + 8cosh l >= 8cosh3l + 8cosh2l", in_range));
        r.add(positive("cosh4l_above_one", std::cosh(4 * l), std::cosh(4 * l) - 1, 1, {}, in_range));
    }
    // chart sanity: psi(pB) = 1, psi(U^-1 pB) = e^{-2l}, psi(U pA) = e^l, U acts by e^{2l}
    const ExtC wA = chart_value(chart, f.Uk(1, P.pA)), wB = chart_value(chart, f.Uk(-1, P.pB));
    {
        double id = std::max({rel(chart_value(chart, P.pB).z, 1.0), rel(wB.z, std::exp(-2 * l)),
                              rel(wA.z, std::exp(l)), rel(chart_value(chart, P.pA).z, std::exp(-l))});
        auto M = induced_action(chart, f.rep.U);
        id = std::max(id, rel(M(ExtC{cplx(0.3, 0.2)}).z, std::exp(2 * l) * cplx(0.3, 0.2)));
        r.add(identity("chart_values", id, 1e2 * o.tol));
    }
    // (a) guard circles, exact certificate per circle
    const double Rout = std::exp(1.5 * l), Rin = std::exp(-2.5 * l);
    for (const auto& [name, R] : {std::pair<const char*, double>{"guard_outer", Rout}, {"guard_inner", Rin}}) {
        auto cert = circle_certificate(chart, b0, R, 720);
        CheckItem it = positive(name, cert.min_margin, cert.min_margin, 720,
                                "exact minimum over the circle of the miss margin of J0+");
        if (cert.fit_residual > 1e-8) {
            it.pass = false;
            it.detail += "; harmonic fit residual too large";
        }
        r.add(it);
    }
    {
        auto bm = f.minus(0);
        double m1 = circle_certificate(chart, bm, std::exp(-1.5 * l), 8).min_margin;
        double m2 = circle_certificate(chart, bm, std::exp(2.5 * l), 8).min_margin;
        r.add(positive("guard_minus_family", std::min(m1, m2), std::min(m1, m2), 2,
                       "J0- misses the circles of radii e^{-3l/2}, e^{5l/2}"));
    }
    // anchors inside the annulus make the connected disk lie in it
    {
        double lo = std::log(Rin), hi = std::log(Rout);
        double m = std::min({std::log(std::abs(wA.z)) - lo, hi - std::log(std::abs(wA.z)), std::log(std::abs(wB.z)) - lo,
                             hi - std::log(std::abs(wB.z))});
        r.add(positive("anchors_in_annulus", m, m, 2, "psi(U pA) = e^l, psi(U^-1 pB) = e^{-2l}"));
    }
    // random points of J0+
    {
        auto pts = bisector_samples(b0, o.samples, 2024);
        std::vector<double> m(pts.size());
        kernels::parallel_for(
            static_cast<long>(pts.size()),
            [&](long k) {
                ExtC w = chart_value(chart, pts[k]);
                double lr = w.inf ? std::numeric_limits<double>::infinity() : std::log(std::abs(w.z));
                m[k] = std::min(lr - std::log(Rin), std::log(Rout) - lr) / l;
            },
            o.workers);
        long cnt = 0;
        double mn = finite_min(m, cnt);
        r.add(positive("annulus_sampling", mn, mn, cnt, "chart moduli of bisector points inside the open annulus"));
    }
    // (c) tangencies D0+ / D1- at psi(U pA) and D0+ / D-2- at psi(U^-1 pB)
    {
        auto d0 = project_bisector(chart, b0, 1024);
        for (const auto& [name, k, w] :
             {std::tuple<const char*, int, ExtC>{"tangency_D1-", 1, wA}, {"tangency_D-2-", -2, wB}}) {
            auto dk = project_bisector(chart, f.minus(k), 1024);
            auto t = disk_tangency(d0, dk, w);
            CheckItem it = identity(name, t.on_circles, 1e-6, 2048, "point on both circles, interiors disjoint");
            if (t.overlap > 1e-6) {
                it.pass = false;
                it.detail += "; disks overlap";
            }
            r.add(it);
        }
    }
    // window of translates
    {
        long K = static_cast<long>(std::ceil((std::log(1e6) / l + 4) / 2));
        K = std::min(K, 10000000L);
        std::vector<int> cp, cm;
        annulus_candidates(l, K, cp, cm);
        bool ok = cp == std::vector<int>{-1, 0, 1} && cm == std::vector<int>{-2, -1, 0, 1};
        r.add(flag("annulus_window", ok,
                   "K = " + std::to_string(K) + ", candidates + {" + join_ints(cp) + "}, - {" + join_ints(cm) + "}"));
    }
    r.finish();
    return r;
}

CheckResult gc_check_elliptic(const FaceFamily& f, const VerifyOptions& o)
{
    if (f.side.kind != SideKind::Elliptic) throw std::invalid_argument("gc_check_elliptic: U is not elliptic");
    CheckResult r;
    r.name = "gc";
    r.ran = true;
    const auto& H = f.space();
    const auto& P = f.pts;
    const double be = f.side.beta, cb = std::cos(be);
    const int n = f.side.n;
    auto chart = pw_chart(f);
    auto b0 = f.plus(0);

    // (a) the polynomial P_beta and its discriminant
    {
        cplx h1 = H.inner(*P.pU1, P.pV), h2 = H.inner(*P.pU2, P.pV);
        double A1 = std::norm(h1), A2 = std::norm(h2);
        double id = std::max({rel(h2 * std::conj(h1), 6.0 * (2 * cb + 1) * (ei(be) + 1.0)),
                              rel(h2 * std::conj(h1), 12.0 * ei(be / 2) * (2 * cb + 1) * std::cos(be / 2)),
                              rel(A1 * A2, 72 * std::pow(2 * cb + 1, 2) * (cb + 1)),
                              rel(A1 + A2, 4 * (2 * cb + 1) * (5 - 2 * cb) * (cb + 1))});
        double reB = (ei(1.5 * be) * h2 * std::conj(h1)).real();
        id = std::max(id, rel(reB, 12 * std::cos(2 * be) * (2 * cb + 1) * std::cos(be / 2)));
        const double c0 = A2 * (1 - A1 / 18), c1 = 2 * reB, c2 = A1 * (1 - A2 / 18);
        const double disc = c1 * c1 - 4 * c0 * c2;
        double sgn = 2 + 4 * cb - 9 * cb * cb;
        id = std::max(id, rel(disc / (4 * A1 * A2), 4.0 / 9.0 * std::sin(be) * std::sin(be) * sgn));
        r.add(identity("h_identities", id, 1e-8));
        r.add(positive("delta_sign", sgn, -sgn, 1, "2 + 4cos(beta) - 9cos^2(beta) < 0"));
        double cert = std::min({-c2, -c0, -disc}) / (std::abs(c0) + std::abs(c1) + std::abs(c2));
        r.add(positive("p_beta_certificate", cert, cert, 3, "leading and constant coefficients and discriminant negative"));
        double worst = -std::numeric_limits<double>::infinity();
        const int m = 400;
        for (int k = 0; k <= m; ++k) {
            double t = k == 0 ? 0.0 : std::pow(10.0, -3 + 6.0 * (k - 1) / (m - 1));
            double v = (c2 * t + c1) * t + c0;
            worst = std::max(worst, v / (1 + t * t));
        }
        r.add(positive("p_beta_sampling", worst, -worst, m + 1, "P_beta(k) < 0 for log-spaced k in [0, 1e3]"));
    }
    // chart sanity
    const ExtC wA = chart_value(chart, f.Uk(1, P.pA)), wB = chart_value(chart, f.Uk(-1, P.pB));
    {
        double id = std::max({rel(chart_value(chart, P.pB).z, 1.0), rel(wB.z, ei(-2 * be)), rel(wA.z, ei(be)),
                              rel(chart_value(chart, P.pA).z, ei(-be))});
        auto M = induced_action(chart, f.rep.U);
        id = std::max(id, rel(M(ExtC{cplx(0.3, 0.2)}).z, ei(2 * be) * cplx(0.3, 0.2)));
        r.add(identity("chart_values", id, 1e2 * o.tol));
    }
    // (b) guard half-rays at arguments 3beta/2 and -5beta/2, exact per ray
    for (const auto& [name, phi] :
         {std::pair<const char*, double>{"guard_ray_plus", 1.5 * be}, {"guard_ray_minus", -2.5 * be}}) {
        auto cert = ray_certificate(chart, b0, phi, 200);
        CheckItem it = positive(name, cert.min_margin, cert.min_margin, 200,
                                "exact minimum over the closed half-ray of the miss margin of J0+");
        if (cert.fit_residual > 1e-8) {
            it.pass = false;
            it.detail += "; quadratic fit residual too large";
        }
        r.add(it);
    }
    {
        auto pts = bisector_samples(b0, o.samples, 2025);
        std::vector<double> m(pts.size());
        kernels::parallel_for(
            static_cast<long>(pts.size()),
            [&](long k) {
                ExtC w = chart_value(chart, pts[k]);
                if (w.inf || std::abs(w.z) == 0) {
                    m[k] = -1;
                    return;
                }
                double t = std::arg(w.z);  // sector (-5beta/2, 3beta/2) around the argument -beta/2
                double d = std::remainder(t + be / 2, 2 * pi);
                m[k] = (2 * be - std::abs(d)) / be;
            },
            o.workers);
        long cnt = 0;
        double mn = finite_min(m, cnt);
        r.add(positive("sector_sampling", mn, mn, cnt, "chart arguments of bisector points inside the open sector"));
    }
    // (c) real angular diameter from pU
    {
        double ratio = 2.25 / std::pow(1 - cb, 2);
        r.add(positive("cosh_ratio", ratio, ratio - 4, 1, "<pU,pV><pV,pU>/(<pU,pU><pV,pV>) > 4", false));
        double ts = spine_angular_diameter(H, P.pU, P.pV), tt = angular_diameter(H, P.pU, P.pV);
        r.add(positive("angular_diameter_spine", ts, pi / 3 - ts, 1, "tanh(d/2) formula", false));
        r.add(positive("angular_diameter", tt, pi / 3 - tt, 1,
                       "tanh(d/4) formula; replaced by the torus census when not below pi/3", false));
    }
    // (d) tangencies
    {
        auto d0 = project_bisector(chart, b0, 1024);
        for (const auto& [name, k, w] :
             {std::tuple<const char*, int, ExtC>{"tangency_D1-", 1, wA}, {"tangency_D-2-", -2, wB}}) {
            auto dk = project_bisector(chart, f.minus(k), 1024);
            auto t = disk_tangency(d0, dk, w);
            CheckItem it = identity(name, t.on_circles, 1e-6, 2048, "point on both circles, interiors disjoint");
            if (t.overlap > 1e-6) {
                it.pass = false;
                it.detail += "; disks overlap";
            }
            r.add(it);
        }
    }
    // (e) sectors for every residue, census for the indices near n/2
    if (n > 0) {
        std::vector<int> cp, cm, near_p, near_m;
        for (int k = 0; k < n; ++k) {
            auto sep = [&](double rot) {
                double d = std::abs(std::remainder(rot, 2 * pi));
                return d >= 4 * be - 1e-12;
            };
            int ks = k > n / 2 ? k - n : k;
            if (!sep(2 * k * be)) {
                if (std::abs(ks) <= 1)
                    cp.push_back(ks);
                else
                    near_p.push_back(k);
            }
            if (!sep((2 * k + 1) * be)) {
                if (ks >= -2 && ks <= 1)
                    cm.push_back(ks);
                else
                    near_m.push_back(k);
            }
        }
        std::sort(cp.begin(), cp.end());
        std::sort(cm.begin(), cm.end());
        bool near_ok = true;
        for (int k : near_p) near_ok = near_ok && std::abs(2 * k - n) < 4;
        for (int k : near_m) near_ok = near_ok && std::abs(2 * k + 1 - n) < 4;
        bool ok = cp == std::vector<int>{-1, 0, 1} && cm == std::vector<int>{-2, -1, 0, 1} && near_ok;
        r.add(flag("sector_disjointness", ok,
                   "n = " + std::to_string(n) + ", overlapping sectors + {" + join_ints(cp) + "}, - {" + join_ints(cm) +
                       "}, near n/2 + {" + join_ints(near_p) + "}, - {" + join_ints(near_m) + "}"));
        for (int k : near_p) {
            auto e = disjoint_evidence(b0, f.plus(k), o.grid, o.workers);
            r.add(positive("census_J0+_J" + std::to_string(k) + "+", e.margin, e.margin, e.samples, e.detail));
        }
        for (int k : near_m) {
            auto e = disjoint_evidence(b0, f.minus(k), o.grid, o.workers);
            r.add(positive("census_J0+_J" + std::to_string(k) + "-", e.margin, e.margin, e.samples, e.detail));
        }
    }
    r.finish();
    return r;
}

const char* to_string(VerdictKind k)
{
    switch (k) {
    case VerdictKind::SurgerySlope: return "SurgerySlope";
    case VerdictKind::Inconclusive: return "Inconclusive";
    case VerdictKind::NotApplicable: return "NotApplicable";
    }
    return "?";
}

std::string Verdict::str() const
{
    if (kind == VerdictKind::SurgerySlope) return "SurgerySlope(" + std::to_string(p) + "," + std::to_string(q) + ")";
    return to_string(kind);
}

bool VerificationReport::failed() const
{
    for (const auto* c : {&incidence, &tf, &lc, &gc})
        if (c->ran && !c->pass) return true;
    return false;
}

namespace {

// Near the unipotent parameter the chart around p_U degenerates numerically.
template <class F>
CheckResult guarded_gc(F check, const FaceFamily& f, const VerifyOptions& o)
{
    try {
        return check(f, o);
    } catch (const std::runtime_error& e) {
        CheckResult r;
        r.name = "gc";
        r.ran = true;
        r.add(flag("chart", false, std::string("numerically degenerate near the unipotent parameter: ") + e.what()));
        r.finish();
        return r;
    }
}

}  // namespace

VerificationReport verify(double alpha2, const VerifyOptions& o)
{
    auto f = make_family(alpha2);
    VerificationReport rep;
    rep.alpha2 = alpha2;
    rep.side = f.side;
    rep.incidence = incidence_check(f, o);
    rep.tf = tf_check(f, o);
    rep.lc = lc_check(f, o);
    rep.gc.name = "gc";
    rep.notes.push_back("numerical evidence, not a proof: the face-topology step is checked on a grid at this parameter");

    std::string skip;
    int n_for_slope = -1;
    switch (f.side.kind) {
    case SideKind::Unipotent:
        skip = "U is unipotent: this parameter is the uniformization itself, not a surgery";
        rep.verdict = {VerdictKind::NotApplicable, 0, 0, skip};
        rep.notes.push_back("at the unipotent parameter the group is the holonomy of the complete structure; no chart "
                            "around p_U is available");
        break;
    case SideKind::Elliptic:
        if (f.side.n == 0) {
            skip = "U is elliptic of infinite order";
            rep.verdict = {VerdictKind::NotApplicable, 0, 0, skip};
        } else if (f.side.n < 9) {
            skip = "visual-sphere method requires n >= 9; the global combinatorics for n = 4..8 is known by other methods";
            rep.verdict = {VerdictKind::Inconclusive, 0, 0, skip};
        } else {
            rep.gc = guarded_gc(gc_check_elliptic, f, o);
            n_for_slope = f.side.n;
            rep.notes.push_back("discriminant sign: the version 2 + 4cos(beta) - 9cos^2(beta) is used");
            rep.notes.push_back(
                "real angular diameter: cos(t/2) = tanh(d/4); the near-antipodal translates are separated by a direct "
                "census of their intersection tori instead of the cone argument");
        }
        break;
    case SideKind::Loxodromic:
        rep.gc = guarded_gc(gc_check_loxodromic, f, o);
        n_for_slope = 0;
        if (alpha2 <= pi / 6)
            rep.notes.push_back("alpha2 <= pi/6: the annulus is certified per parameter; the closed-form chain is only "
                                "established for alpha2 in (pi/6, alpha2_lim)");
        break;
    }
    if (n_for_slope >= 0) {
        std::string failed;
        for (const auto* c : {&rep.incidence, &rep.tf, &rep.lc, &rep.gc})
            if (!c->pass) failed += (failed.empty() ? "" : ", ") + c->name;
        if (failed.empty()) {
            auto s = slope_from_type(-1, n_for_slope);
            rep.verdict = {VerdictKind::SurgerySlope, s.p, s.q, {}};
        } else {
            rep.verdict = {VerdictKind::Inconclusive, 0, 0, "failed checks: " + failed};
        }
    } else if (!skip.empty() && rep.failed()) {
        rep.verdict.reason += "; failed checks";
    }
    return rep;
}

VerificationReport verify_order(int n, const VerifyOptions& o)
{
    if (n < 4) throw std::invalid_argument("order must be at least 4");
    return verify(alpha2_for_order(n), o);
}

}  // namespace crlab
