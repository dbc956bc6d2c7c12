#pragma once

#include <optional>
#include <string>

#include "crlab/isometry.hpp"

namespace crlab {

struct PWParams {
    double alpha1 = 0;
    double alpha2 = 0;
};

// arccos(sqrt(3/8)): the unipotent parameter on the slice alpha1 = 0.
double alpha2_lim();

struct PWRep {
    PWParams params;
    HermitianSpace space = HermitianSpace::siegel();
    Mat3 S, T;
    Mat3 A, B, U, V, W;  // ST, TS, S^-1 T, T S^-1, S T S
    Mat3 Sinv, Tinv;

    Isometry iso(const Mat3& M) const { return Isometry(M, space); }
};

PWRep build_rep(const PWParams& p);

// Words in s, t with optional integer exponents, e.g. "ts^-1t^3".
// Throws std::invalid_argument on anything else.
Mat3 eval_word(const PWRep& rep, const std::string& word);

namespace words {
inline const std::string m1 = "ts^-1";
inline const std::string l1 = "ts^-1ts^-1ts^-1";
inline const std::string m2 = "st";
inline const std::string l2 = "ststst";
inline const std::string l2_listed = "ststs^-1t^3s^-1t";
inline const std::string relator = "ts^-1t^-3s^-2t^-1st^3s^2";
}  // namespace words

struct RemarkablePoints {
    Vec3 pA, pB, pU, pV, pW;
    std::optional<Vec3> pU1, pU2;  // p'_U, p''_U (absent at the unipotent parameter)
    cplx delta;                    // sqrt((8cos^2 a2 - 3)(8cos^2 a2 + 1)), 2i sin(beta) or 2 sinh(l)
};

// Throws std::invalid_argument if alpha1 != 0.
RemarkablePoints remarkable_points(const PWParams& p);

struct TraceCoords {
    cplx z, w, x;
};

TraceCoords trace_coords(const PWRep& rep);
double char_Q(cplx z, cplx w);
double char_P(cplx z, cplx w);

double region_D(double x, double y);
struct RegionZ {
    bool inside = false;
    double value = 0;  // D(4cos^2 a1, 4cos^2 a2), the margin
};
RegionZ region_Z(const PWParams& p);

IsometryClass peripheral_type(const PWParams& p);

double alpha2_for_order(int n);

enum class SideKind { Elliptic, Unipotent, Loxodromic };
const char* to_string(SideKind s);

struct ParamSide {
    SideKind kind = SideKind::Unipotent;
    double trU = 3;
    double beta = 0;      // elliptic rotation angle
    int n = 0;            // finite order if recognized, else 0
    double l = 0;         // loxodromic length parameter
    cplx delta;
};

ParamSide param_side(double alpha2);

// Lower-triangular involution of U(2,1) with I U I = U^-1 (alpha1 = 0).
Mat3 involution_I(double alpha2);

cplx schwartz_point();

// Cusp marking: a surgery on the first cusp of type (p/n, 1/n) has coefficient
// (-p, n + 3p) in the basis (l1, m1).  Returned with the first entry >= 0.
struct Slope {
    int p = 0, q = 0;
};
Slope slope_from_type(int p, int n);
// n l0 + p m0 expressed in (l1, m1) with l0 = m1, m0 = 3 m1 - l1.
Slope marking_change(int n, int p);

}  // namespace crlab
