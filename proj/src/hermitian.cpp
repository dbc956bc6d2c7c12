#include "crlab/hermitian.hpp"

#include <stdexcept>

namespace crlab {

const char* to_string(Model m)
{
    switch (m) {
    case Model::Ball: return "ball";
    case Model::Siegel: return "siegel";
    default: return "custom";
    }
}

const char* to_string(Location l)
{
    switch (l) {
    case Location::Inside: return "inside";
    case Location::Boundary: return "boundary";
    default: return "outside";
    }
}

HermitianSpace::HermitianSpace(const Mat3& J, Model m) : J_(J), JhInv_(J.adjoint().inverse()), model_(m) {}

HermitianSpace HermitianSpace::ball()
{
    Mat3 J = Mat3::Zero();
    J(0, 0) = 1.0;
    J(1, 1) = 1.0;
    J(2, 2) = -1.0;
    return HermitianSpace(J, Model::Ball);
}

HermitianSpace HermitianSpace::siegel()
{
    Mat3 J = Mat3::Zero();
    J(0, 2) = 1.0;
    J(1, 1) = 1.0;
    J(2, 0) = 1.0;
    return HermitianSpace(J, Model::Siegel);
}

HermitianSpace HermitianSpace::custom(const Mat3& J)
{
    double scale = std::max(1.0, J.norm());
    if ((J - J.adjoint()).norm() > 1e-12 * scale)
        throw std::invalid_argument("custom form is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat3> es(J);
    auto ev = es.eigenvalues();
    int pos = 0, neg = 0;
    for (int i = 0; i < 3; ++i) {
        if (ev(i) > 1e-12 * scale) ++pos;
        else if (ev(i) < -1e-12 * scale) ++neg;
    }
    if (pos != 2 || neg != 1)
        throw std::invalid_argument("custom form does not have signature (2,1)");
    return HermitianSpace(J, Model::Custom);
}

std::array<double, 3> HermitianSpace::signature_values() const
{
    Eigen::SelfAdjointEigenSolver<Mat3> es(J_);
    auto ev = es.eigenvalues();
    return {ev(0), ev(1), ev(2)};
}

Vec3 HermitianSpace::box(const Vec3& z, const Vec3& w) const
{
    switch (model_) {
    case Model::Siegel:
        return Vec3(z(0) * w(1) - z(1) * w(0), z(2) * w(0) - z(0) * w(2), z(1) * w(2) - z(2) * w(1)).conjugate();
    case Model::Ball:
        return Vec3(z(1) * w(2) - z(2) * w(1), z(2) * w(0) - z(0) * w(2), z(1) * w(0) - z(0) * w(1)).conjugate();
    default: {
        // <s, r> = s^H J r = (z x w) . r  =>  J^H s = conj(z x w)
        Vec3 c = cross(z, w);
        return JhInv_ * c.conjugate();
    }
    }
}

Location HermitianSpace::locate(const Vec3& v, double tol) const
{
    double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("locate: zero vector");
    double h = norm(v / n);
    if (h < -tol) return Location::Inside;
    if (h > tol) return Location::Outside;
    return Location::Boundary;
}

static void check_same(const HVec& u, const HVec& v)
{
    if (!u.space || !v.space || !u.space->same_as(*v.space))
        throw std::invalid_argument("vectors belong to different Hermitian spaces");
}

cplx inner(const HVec& u, const HVec& v)
{
    check_same(u, v);
    return u.space->inner(u.v, v.v);
}

HVec box(const HVec& u, const HVec& v)
{
    check_same(u, v);
    return {u.space->box(u.v, v.v), u.space};
}

Location locate(const HVec& v, double tol) { return v.space->locate(v.v, tol); }

Line polar(const Vec3& p) { return {p}; }
Vec3 pole(const Line& l) { return l.pole; }

Line line_through(const HermitianSpace& H, const Vec3& p, const Vec3& q) { return {H.box(p, q)}; }

bool on_line(const HermitianSpace& H, const Line& l, const Vec3& z, double tol)
{
    return std::abs(H.inner(l.pole.normalized(), z.normalized())) <= tol;
}

std::array<Vec3, 2> line_basis(const HermitianSpace& H, const Line& l)
{
    // kernel of the row functional z -> <pole, z>
    Eigen::RowVector3cd row = (H.J().adjoint() * l.pole).adjoint();
    Eigen::JacobiSVD<Eigen::Matrix<cplx, 1, 3>> svd(row, Eigen::ComputeFullV);
    Mat3 V = svd.matrixV();
    return {V.col(1), V.col(2)};
}

bool is_autopolar(const HermitianSpace& H, const Vec3& a, const Vec3& b, const Vec3& c, double tol)
{
    Vec3 x = a.normalized(), y = b.normalized(), z = c.normalized();
    if (std::abs(H.norm(x)) <= tol || std::abs(H.norm(y)) <= tol || std::abs(H.norm(z)) <= tol) return false;
    return std::abs(H.inner(x, y)) <= tol && std::abs(H.inner(y, z)) <= tol && std::abs(H.inner(z, x)) <= tol;
}

Vec3 normalized(const Vec3& v)
{
    Vec3 u = v.normalized();
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(u(i)) > std::abs(u(k)) + 1e-14) k = i;
    if (std::abs(u(k)) > 0) u *= std::conj(u(k)) / std::abs(u(k));
    return u;
}

double proj_distance(const Vec3& a, const Vec3& b)
{
    Vec3 x = a.normalized(), y = b.normalized();
    cplx lambda = y.dot(x);
    return (x - lambda * y).norm();
}

bool proj_equal(const Vec3& a, const Vec3& b, double tol) { return proj_distance(a, b) <= tol; }

Vec3 cross(const Vec3& u, const Vec3& v)
{
    return Vec3(u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0));
}

cplx det3(const Vec3& u, const Vec3& v, const Vec3& r)
{
    Mat3 M;
    M.col(0) = u;
    M.col(1) = v;
    M.col(2) = r;
    return M.determinant();
}

}  // namespace crlab
