#include "crlab/pw_family.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crlab {

namespace {
const double kPi = std::numbers::pi;
cplx ei(double t) { return std::polar(1.0, t); }
}  // namespace

double alpha2_lim() { return std::acos(std::sqrt(3.0 / 8.0)); }

PWRep build_rep(const PWParams& prm)
{
    const double a1 = prm.alpha1, a2 = prm.alpha2;
    const double x1 = std::sqrt(2 * std::cos(a1));
    PWRep r;
    r.params = prm;
    Mat3 S;
    S << ei(a1), x1 * ei(a1 - a2), -1.0,
         -x1 * ei(a2), -ei(a1), 0.0,
         -1.0, 0.0, 0.0;
    S *= ei(-a1 / 3);
    Mat3 T;
    T << 0.0, 0.0, -1.0,
         0.0, -ei(-a1), -x1 * ei(-a1 - a2),
         -1.0, x1 * ei(a2), ei(-a1);
    T *= ei(a1 / 3);
    r.S = S;
    r.T = T;
    const Mat3& J = r.space.J();
    r.Sinv = J * S.adjoint() * J;  // J = J^-1 in the Siegel model
    r.Tinv = J * T.adjoint() * J;
    r.A = S * T;
    r.B = T * S;
    r.U = r.Sinv * T;
    r.V = T * r.Sinv;
    r.W = S * T * S;
    return r;
}

Mat3 eval_word(const PWRep& rep, const std::string& word)
{
    Mat3 M = Mat3::Identity();
    size_t i = 0;
    if (word.empty()) throw std::invalid_argument("empty word");
    while (i < word.size()) {
        char c = word[i++];
        if (c != 's' && c != 't') throw std::invalid_argument("bad letter in word: " + word);
        long e = 1;
        if (i < word.size() && word[i] == '^') {
            ++i;
            size_t start = i;
            if (i < word.size() && (word[i] == '-' || word[i] == '+')) ++i;
            while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) ++i;
            if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(word[start]))))
                throw std::invalid_argument("bad exponent in word: " + word);
            e = std::stol(word.substr(start, i - start));
        }
        const Mat3& G = (c == 's') ? (e >= 0 ? rep.S : rep.Sinv) : (e >= 0 ? rep.T : rep.Tinv);
        for (long k = 0; k < std::labs(e); ++k) M = M * G;
    }
    return M;
}

RemarkablePoints remarkable_points(const PWParams& p)
{
    if (p.alpha1 != 0.0) throw std::invalid_argument("remarkable points need alpha1 = 0");
    const double a = p.alpha2;
    const double s2 = std::sqrt(2.0);
    RemarkablePoints r;
    r.pA = Vec3(1, 0, 0);
    r.pB = Vec3(0, 0, 1);
    r.pU = Vec3(1, -s2 / 2 * ei(a), ei(2 * a));
    r.pV = Vec3(-ei(2 * a), -s2 / 2 * ei(a), -1);
    r.pW = Vec3(-ei(2 * a), s2 * ei(3 * a) + s2 / 2 * ei(a), ei(2 * a));
    const double c = 8 * std::cos(a) * std::cos(a);
    const double prod = (c - 3) * (c + 1);
    r.delta = prod >= 0 ? cplx(std::sqrt(prod), 0) : cplx(0, std::sqrt(-prod));
    if (std::abs(prod) > 1e-12) {
        cplx e = 2.0 * ei(2 * a) + 1.0;
        r.pU1 = Vec3(2.0 * e, -s2 * ei(a) * (e + r.delta), -(c + 1) - r.delta);
        r.pU2 = Vec3(2.0 * e, -s2 * ei(a) * (e - r.delta), -(c + 1) + r.delta);
    }
    return r;
}

double char_Q(cplx z, cplx w) { return std::norm(z) + std::norm(w) - 3; }

double char_P(cplx z, cplx w)
{
    double az = std::norm(z), aw = std::norm(w);
    return 2 * std::real(z * z * z) + 2 * std::real(w * w * w) + az * aw - 6 * az - 6 * aw + 9;
}

TraceCoords trace_coords(const PWRep& rep)
{
    TraceCoords t;
    t.z = (rep.S * rep.T).trace();
    t.w = (rep.S * rep.Tinv).trace();
    t.x = (rep.S * rep.T * rep.Sinv * rep.Tinv).trace();
    return t;
}

double region_D(double x, double y)
{
    return x * x * x * y * y * y - 9 * x * x * y * y - 27 * x * y * y + 81 * x * y - 27 * x - 27;
}

RegionZ region_Z(const PWParams& p)
{
    double x = 4 * std::cos(p.alpha1) * std::cos(p.alpha1);
    double y = 4 * std::cos(p.alpha2) * std::cos(p.alpha2);
    RegionZ z;
    z.value = region_D(x, y);
    z.inside = z.value > 0;
    return z;
}

IsometryClass peripheral_type(const PWParams& p)
{
    auto rep = build_rep(p);
    return classify(rep.iso(eval_word(rep, words::m1))).cls;
}

double alpha2_for_order(int n)
{
    if (n < 4) throw std::invalid_argument("order must be at least 4");
    return std::acos(std::sqrt((2 * std::cos(2 * kPi / n) + 1) / 8));
}

const char* to_string(SideKind s)
{
    switch (s) {
    case SideKind::Elliptic: return "elliptic";
    case SideKind::Loxodromic: return "loxodromic";
    default: return "unipotent";
    }
}

ParamSide param_side(double alpha2)
{
    ParamSide s;
    const double c = std::cos(alpha2);
    s.trU = 8 * c * c;
    const double h = (s.trU - 1) / 2;
    if (std::abs(s.trU - 3) <= 1e-12) {
        s.kind = SideKind::Unipotent;
        return s;
    }
    if (s.trU < 3) {
        s.kind = SideKind::Elliptic;
        s.beta = std::acos(std::clamp(h, -1.0, 1.0));
        s.delta = cplx(0, 2 * std::sin(s.beta));
        double m = 2 * kPi / s.beta;
        long k = std::lround(m);
        if (k >= 1 && std::abs(m - k) <= 1e-9 * m) s.n = static_cast<int>(k);
    } else {
        s.kind = SideKind::Loxodromic;
        s.l = std::acosh(h);
        s.delta = cplx(2 * std::sinh(s.l), 0);
    }
    return s;
}

Mat3 involution_I(double a)
{
    const double s2 = std::sqrt(2.0);
    Mat3 I;
    I << 1.0, 0.0, 0.0,
         -s2 * ei(a), -1.0, 0.0,
         -1.0, -s2 * ei(-a), 1.0;
    return I;
}

cplx schwartz_point()
{
    double th = std::acos(-7.0 / 8.0) / 3.0;
    return 2.0 * ei(th) + ei(-2 * th);
}

Slope marking_change(int n, int p)
{
    // n l0 + p m0 = n m1 + p (3 m1 - l1)
    return {-p, n + 3 * p};
}

Slope slope_from_type(int p, int n)
{
    Slope s = marking_change(n, p);
    if (s.p < 0 || (s.p == 0 && s.q < 0)) {
        s.p = -s.p;
        s.q = -s.q;
    }
    return s;
}

}  // namespace crlab
