#pragma once

#include <array>
#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace crlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

inline constexpr double kTol = 1e-9;
inline constexpr double kProjTol = 1e-8;

enum class Model { Ball, Siegel, Custom };
enum class Location { Inside, Boundary, Outside };

const char* to_string(Model m);
const char* to_string(Location l);

// A Hermitian form of signature (2,1) on C^3.  <u,v> = u^H J v, linear in v.
class HermitianSpace {
public:
    static HermitianSpace ball();
    static HermitianSpace siegel();
    // Throws std::invalid_argument unless J is Hermitian with signature (2,1).
    static HermitianSpace custom(const Mat3& J);

    const Mat3& J() const { return J_; }
    Model model() const { return model_; }

    cplx inner(const Vec3& u, const Vec3& v) const { return u.dot(J_ * v); }
    double norm(const Vec3& v) const { return inner(v, v).real(); }

    // The vector s with <s, r> = det(u, v, r) for every r.
    Vec3 box(const Vec3& u, const Vec3& v) const;

    // Throws std::invalid_argument on the zero vector.  The test is made on
    // the unit-normalized vector so it does not depend on scale.
    Location locate(const Vec3& v, double tol = kTol) const;

    // Eigenvalues of J, ascending.
    std::array<double, 3> signature_values() const;

    bool same_as(const HermitianSpace& o) const { return model_ == o.model_ && (J_ - o.J_).norm() == 0.0; }

private:
    HermitianSpace(const Mat3& J, Model m);
    Mat3 J_;
    Mat3 JhInv_;
    Model model_;
};

// Vector tagged with its space, for callers that mix models.
struct HVec {
    Vec3 v;
    std::shared_ptr<const HermitianSpace> space;
};

cplx inner(const HVec& u, const HVec& v);   // throws on mismatched spaces
HVec box(const HVec& u, const HVec& v);
Location locate(const HVec& v, double tol = kTol);

// Complex line, stored by its pole: {z : <pole, z> = 0}.
struct Line {
    Vec3 pole;
};

Line polar(const Vec3& p);
Vec3 pole(const Line& l);
Line line_through(const HermitianSpace& H, const Vec3& p, const Vec3& q);
bool on_line(const HermitianSpace& H, const Line& l, const Vec3& z, double tol = kTol);
// Two vectors spanning the line.
std::array<Vec3, 2> line_basis(const HermitianSpace& H, const Line& l);

// Three mutually orthogonal non-isotropic points.
bool is_autopolar(const HermitianSpace& H, const Vec3& a, const Vec3& b, const Vec3& c, double tol = kTol);

// Unit Euclidean norm, largest coordinate made real positive.
Vec3 normalized(const Vec3& v);
// Euclidean distance between unit representatives after optimal phase.
double proj_distance(const Vec3& a, const Vec3& b);
bool proj_equal(const Vec3& a, const Vec3& b, double tol = kProjTol);

// Bilinear cross product (Eigen's cross conjugates complex results).
Vec3 cross(const Vec3& u, const Vec3& v);

// Plain complex determinant with columns u, v, r.
cplx det3(const Vec3& u, const Vec3& v, const Vec3& r);

}  // namespace crlab
