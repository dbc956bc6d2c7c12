#include "crlab/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace crlab {

namespace {
const double kPi = std::numbers::pi;
const cplx kOmega = std::polar(1.0, 2 * kPi / 3);
}  // namespace

const char* to_string(IsometryClass c)
{
    switch (c) {
    case IsometryClass::RegularElliptic: return "RegularElliptic";
    case IsometryClass::NonRegularElliptic: return "NonRegularElliptic";
    case IsometryClass::Unipotent: return "Unipotent";
    case IsometryClass::EllipticParabolic: return "EllipticParabolic";
    case IsometryClass::Loxodromic: return "Loxodromic";
    default: return "Identity";
    }
}

Isometry Isometry::inverse() const
{
    const Mat3& J = H_.J();
    return Isometry(J.inverse() * M_.adjoint() * J, H_);
}

Su21Residuals verify_su21(const Mat3& M, const HermitianSpace& H, double tol)
{
    Su21Residuals r;
    r.unitary = (M.adjoint() * H.J() * M - H.J()).norm();
    r.det = std::abs(M.determinant() - 1.0);
    r.ok = r.unitary <= tol * std::max(1.0, M.squaredNorm()) && r.det <= tol * std::max(1.0, M.squaredNorm());
    return r;
}

double goldman_f(cplx z)
{
    double a = std::norm(z);
    return a * a - 8.0 * std::real(z * z * z) + 18.0 * a - 27.0;
}

std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c)
{
    // depressed cubic y^3 + p y + q with x = y - a/3
    cplx p = b - a * a / 3.0;
    cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + disc;
    cplx v3 = -q / 2.0 - disc;
    if (std::abs(v3) > std::abs(u3)) std::swap(u3, v3);
    std::array<cplx, 3> roots;
    if (std::abs(u3) < 1e-300) {
        roots = {cplx(0), cplx(0), cplx(0)};
    } else {
        cplx u = std::pow(u3, 1.0 / 3.0);
        for (int k = 0; k < 3; ++k) {
            cplx uk = u * std::pow(kOmega, k);
            cplx vk = -p / (3.0 * uk);
            roots[k] = uk + vk;
        }
    }
    for (auto& r : roots) {
        r -= a / 3.0;
        for (int it = 0; it < 3; ++it) {
            cplx fv = ((r + a) * r + b) * r + c;
            cplx df = (3.0 * r + 2.0 * a) * r + b;
            if (std::abs(df) < 1e-14) break;
            cplx step = fv / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            r -= step;
        }
    }
    return roots;
}

namespace {

Vec3 null_vector(const Mat3& A)
{
    Vec3 best = Vec3::Zero();
    double bn = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Vec3 c = cross(A.row(i).transpose(), A.row(j).transpose());
            double n = c.norm();
            if (n > bn) {
                bn = n;
                best = c;
            }
        }
    double scale = std::max(1e-300, A.squaredNorm());
    if (bn > 1e-8 * scale) return best / bn;
    Eigen::JacobiSVD<Mat3> svd(A, Eigen::ComputeFullV);
    return svd.matrixV().col(2);
}

}  // namespace

EigenData eigen(const Isometry& g)
{
    const Mat3& M = g.M();
    const HermitianSpace& H = g.space();
    cplx t1 = M.trace();
    cplx t2 = (M * M).trace();
    cplx e2 = (t1 * t1 - t2) / 2.0;
    cplx d = M.determinant();
    auto lam = cubic_roots(-t1, e2, -d);

    EigenData out;
    double gapmin = 1e300;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) gapmin = std::min(gapmin, std::abs(lam[i] - lam[j]));

    Mat3 I = Mat3::Identity();
    // a Jordan block spreads the computed roots by ~eps^(1/3)
    if (gapmin < 1e-4) {
        // repeated eigenvalue: take the eigenspace of the cluster from the SVD
        std::array<int, 3> idx{0, 1, 2};
        int a = 0, b = 1;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (std::abs(lam[i] - lam[j]) <= gapmin) {
                    a = i;
                    b = j;
                }
        cplx lr = (lam[a] + lam[b]) / 2.0;
        Eigen::JacobiSVD<Mat3> svd(M - lr * I, Eigen::ComputeFullV);
        auto sv = svd.singularValues();
        double sc = std::max(1.0, M.norm());
        Vec3 v1 = svd.matrixV().col(2), v2 = svd.matrixV().col(1);
        bool two_dim = sv(1) <= 1e-6 * sc;
        out.triples[a].value = lr;
        out.triples[a].vector = v1;
        out.triples[b].value = lr;
        out.triples[b].vector = two_dim ? v2 : v1;
        out.defective = !two_dim;
        int c = 3 - a - b;
        (void)idx;
        if (std::abs(lam[c] - lr) < 1e-4) {
            // triple cluster
            out.triples[c].value = lr;
            out.triples[c].vector = sv(0) <= 1e-6 * sc ? Vec3(svd.matrixV().col(0)) : v1;
            out.defective = sv(0) > 1e-6 * sc;
        } else {
            out.triples[c].value = lam[c];
            out.triples[c].vector = null_vector(M - lam[c] * I);
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            out.triples[i].value = lam[i];
            out.triples[i].vector = null_vector(M - lam[i] * I);
        }
    }
    double res = 0;
    for (auto& t : out.triples) {
        t.vector.normalize();
        t.norm = H.norm(t.vector);
        t.norm_sign = t.norm > kTol ? 1 : (t.norm < -kTol ? -1 : 0);
        res = std::max(res, (M * t.vector - t.value * t.vector).norm());
    }
    out.residual = res;
    return out;
}

Classification classify(const Isometry& g, double tol)
{
    Classification c;
    const Mat3& M = g.M();
    c.trace = M.trace();
    c.f = goldman_f(c.trace);
    c.eig = eigen(g);
    auto& tr = c.eig.triples;
    double gap = 1e300;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) gap = std::min(gap, std::abs(tr[i].value - tr[j].value));
    c.condition = gap;

    for (int k = 0; k < 3; ++k)
        if ((M - std::pow(kOmega, k) * Mat3::Identity()).norm() <= std::max(tol, 1e-9)) {
            c.cls = IsometryClass::Identity;
            return c;
        }

    double fscale = std::max(1.0, std::pow(std::abs(c.trace), 4));
    double maxdev = 0;
    for (auto& t : tr) maxdev = std::max(maxdev, std::abs(std::abs(t.value) - 1.0));

    if (c.f > 1e-7 * fscale) {
        c.cls = IsometryClass::Loxodromic;
        return c;
    }
    if (c.f < -1e-7 * fscale) {
        c.cls = IsometryClass::RegularElliptic;
        return c;
    }
    // f(tr) ~ 0: unipotent iff M - w Id is nilpotent for the nearest cube root w
    {
        int k = 0;
        for (int j = 1; j < 3; ++j)
            if (std::abs(c.trace / 3.0 - std::pow(kOmega, j)) < std::abs(c.trace / 3.0 - std::pow(kOmega, k))) k = j;
        Mat3 N = M - std::pow(kOmega, k) * Mat3::Identity();
        double sc = std::max(1.0, std::pow(M.norm(), 3));
        if ((N * N * N).norm() <= 1e-8 * sc && std::abs(c.trace - 3.0 * std::pow(kOmega, k)) <= 1e-6) {
            c.cls = IsometryClass::Unipotent;
            return c;
        }
    }
    if (gap < 1e-4) {
        c.cls = c.eig.defective ? IsometryClass::EllipticParabolic : IsometryClass::NonRegularElliptic;
        return c;
    }
    c.cls = maxdev > 1e-6 ? IsometryClass::Loxodromic : IsometryClass::RegularElliptic;
    return c;
}

Vec3 canonical_fixed_point(const Isometry& g, double tol)
{
    auto c = classify(g, tol);
    auto& tr = c.eig.triples;
    switch (c.cls) {
    case IsometryClass::RegularElliptic:
        for (auto& t : tr)
            if (t.norm_sign < 0) return t.vector;
        throw std::runtime_error("elliptic element without negative eigenvector");
    case IsometryClass::Unipotent:
        return tr[0].vector;
    case IsometryClass::Loxodromic: {
        // eigenvalue of modulus one
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(std::abs(tr[i].value) - 1) < std::abs(std::abs(tr[best].value) - 1)) best = i;
        return tr[best].vector;
    }
    default:
        throw std::invalid_argument(std::string("no canonical fixed point for class ") + to_string(c.cls));
    }
}

bool rational_approx(double x, int cap, double tol, int& num, int& den)
{
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        long h2 = static_cast<long>(a) * h1 + h0;
        long k2 = static_cast<long>(a) * k1 + k0;
        if (k2 > cap) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(x - static_cast<double>(h1) / k1) <= tol) {
            num = static_cast<int>(h1);
            den = static_cast<int>(k1);
            return true;
        }
        double frac = r - a;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return false;
}

std::string EllipticType::str() const
{
    std::ostringstream os;
    if (finite)
        os << "(" << p << "/" << n << ", " << q << "/" << n << ")";
    else
        os << "(angles " << angle1 << ", " << angle2 << ")";
    return os.str();
}

bool EllipticType::same(int p2, int q2, int n2) const
{
    if (!finite) return false;
    auto eq = [](int a, int n, int b, int m) { return static_cast<long>(a) * m == static_cast<long>(b) * n; };
    return (eq(p, n, p2, n2) && eq(q, n, q2, n2)) || (eq(p, n, q2, n2) && eq(q, n, p2, n2));
}

EllipticType elliptic_type(const Isometry& g)
{
    auto c = classify(g);
    if (c.cls != IsometryClass::RegularElliptic && c.cls != IsometryClass::NonRegularElliptic &&
        c.cls != IsometryClass::Identity)
        throw std::invalid_argument("elliptic_type: element is not elliptic");
    auto& tr = c.eig.triples;
    int neg = -1;
    for (int i = 0; i < 3; ++i)
        if (tr[i].norm_sign < 0) neg = i;
    if (neg < 0) throw std::invalid_argument("elliptic_type: no negative eigenvector");
    std::array<double, 2> ang{};
    int j = 0;
    for (int i = 0; i < 3; ++i)
        if (i != neg) ang[j++] = std::arg(tr[i].value / tr[neg].value);

    EllipticType t;
    t.angle1 = ang[0];
    t.angle2 = ang[1];
    int a1, b1, a2, b2;
    if (rational_approx(ang[0] / (2 * kPi), 512, 1e-8, a1, b1) &&
        rational_approx(ang[1] / (2 * kPi), 512, 1e-8, a2, b2)) {
        int n = std::lcm(b1, b2);
        int p = a1 * (n / b1), q = a2 * (n / b2);
        auto wrap = [n](int x) {
            x %= n;
            if (x < 0) x += n;
            if (2 * x > n) x -= n;
            return x;
        };
        p = wrap(p);
        q = wrap(q);
        if (p < q) {
            std::swap(p, q);
            std::swap(t.angle1, t.angle2);
        }
        t.finite = true;
        t.p = p;
        t.q = q;
        t.n = n;
    } else if (t.angle1 < t.angle2) {
        std::swap(t.angle1, t.angle2);
    }
    return t;
}

}  // namespace crlab
