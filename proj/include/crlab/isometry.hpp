#pragma once

#include <array>
#include <string>

#include "crlab/hermitian.hpp"

namespace crlab {

enum class IsometryClass { RegularElliptic, NonRegularElliptic, Unipotent, EllipticParabolic, Loxodromic, Identity };

const char* to_string(IsometryClass c);

class Isometry {
public:
    Isometry(const Mat3& M, const HermitianSpace& H) : M_(M), H_(H) {}

    const Mat3& M() const { return M_; }
    const HermitianSpace& space() const { return H_; }

    // J^{-1} M^H J, exact for unitary M.
    Isometry inverse() const;
    Isometry operator*(const Isometry& o) const { return Isometry(M_ * o.M_, H_); }
    Vec3 operator()(const Vec3& v) const { return M_ * v; }
    cplx trace() const { return M_.trace(); }

private:
    Mat3 M_;
    HermitianSpace H_;
};

struct Su21Residuals {
    double unitary = 0;  // ||M^H J M - J||
    double det = 0;      // |det M - 1|
    bool ok = false;
};

Su21Residuals verify_su21(const Mat3& M, const HermitianSpace& H, double tol = kTol);

// Goldman's discriminant |z|^4 - 8 Re z^3 + 18 |z|^2 - 27.
double goldman_f(cplx z);

// Roots of x^3 + a x^2 + b x + c, polished by Newton steps.
std::array<cplx, 3> cubic_roots(cplx a, cplx b, cplx c);

struct EigenTriple {
    cplx value;
    Vec3 vector;
    double norm = 0;   // <v,v> for unit Euclidean v
    int norm_sign = 0;
};

struct EigenData {
    std::array<EigenTriple, 3> triples;
    bool defective = false;  // fewer than three independent eigenvectors
    double residual = 0;     // max ||M v - lambda v||
};

EigenData eigen(const Isometry& g);

struct Classification {
    IsometryClass cls = IsometryClass::Identity;
    cplx trace;
    double f = 0;
    EigenData eig;
    double condition = 0;  // min eigenvalue gap, small means ill-conditioned
};

Classification classify(const Isometry& g, double tol = kTol);

// Throws std::invalid_argument for the identity or non-regular non-unipotent input.
Vec3 canonical_fixed_point(const Isometry& g, double tol = kTol);

// Rotation angles (alpha - gamma, beta - gamma) of the positive eigenvectors
// relative to the negative one.  The pair is unordered; canonical order p >= q.
struct EllipticType {
    bool finite = false;
    int p = 0, q = 0, n = 1;
    double angle1 = 0, angle2 = 0;  // radians in (-pi, pi]
    std::string str() const;
    bool same(int p2, int q2, int n2) const;  // equality up to order
};

// Throws std::invalid_argument unless g is elliptic with a negative eigenvector.
EllipticType elliptic_type(const Isometry& g);

// Best rational approximation x ~ num/den with den <= cap (continued fractions).
bool rational_approx(double x, int cap, double tol, int& num, int& den);

}  // namespace crlab
