#pragma once

#include <string>
#include <vector>

#include "crlab/bisector.hpp"
#include "crlab/pw_family.hpp"
#include "crlab/visual_sphere.hpp"

namespace crlab {

// One numeric fact.  `margin` is positive when the fact holds with room to spare
// (for identities it is tol - residual).  Items with required = false are
// reported but do not decide the check.
struct CheckItem {
    std::string name;
    bool pass = false;
    bool required = true;
    double value = 0;
    double margin = 0;
    long samples = 0;
    std::string detail;
};

struct CheckResult {
    std::string name;
    bool ran = false;
    bool pass = false;
    std::vector<CheckItem> items;

    CheckItem& add(CheckItem it);
    // pass = ran and every required item passes.
    void finish();
    double worst_margin() const;
};

struct VerifyOptions {
    int grid = 720;
    int samples = 2000;
    int workers = 1;
    double tol = kTol;
};

// The bisectors J_k^+ = U^k B(p_U, p_V), J_k^- = U^k B(p_U, p_W).
struct FaceFamily {
    double alpha2 = 0;
    ParamSide side;
    PWRep rep;
    RemarkablePoints pts;
    Mat3 Uinv;

    Mat3 Upow(int k) const;
    Vec3 Uk(int k, const Vec3& v) const { return Upow(k) * v; }
    Bisector plus(int k) const;
    Bisector minus(int k) const;
    const HermitianSpace& space() const { return rep.space; }
};

FaceFamily make_family(double alpha2);

// The chart psi of the lines through [p_U] with psi(p_B) = 1 and U acting as
// z -> e^{2i beta} z (elliptic) or z -> e^{2l} z (loxodromic).  Throws at the
// unipotent parameter.
VisualChart pw_chart(const FaceFamily& f);

// Margin of the statement "the complex line through [b.p] with chart value w
// misses the closed bisector b"; positive when it does.  Exact: the line is
// z0 + mu b.p and the test is on the modulus of mu.
double line_miss_margin(const VisualChart& c, const Bisector& b, const ExtC& w);

CheckResult incidence_check(const FaceFamily& f, const VerifyOptions& o = {});
CheckResult tf_check(const FaceFamily& f, const VerifyOptions& o = {});
CheckResult lc_check(const FaceFamily& f, const VerifyOptions& o = {});
// Both throw std::invalid_argument on the wrong side.
CheckResult gc_check_loxodromic(const FaceFamily& f, const VerifyOptions& o = {});
CheckResult gc_check_elliptic(const FaceFamily& f, const VerifyOptions& o = {});

enum class VerdictKind { SurgerySlope, Inconclusive, NotApplicable };
const char* to_string(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    int p = 0, q = 0;
    std::string reason;
    std::string str() const;
};

struct VerificationReport {
    double alpha2 = 0;
    ParamSide side;
    CheckResult incidence, tf, lc, gc;
    Verdict verdict;
    std::vector<std::string> notes;

    // A check failed where a pass is expected.
    bool failed() const;
};

// Throws std::invalid_argument unless alpha2 is in (0, pi/2).
VerificationReport verify(double alpha2, const VerifyOptions& o = {});
// Throws std::invalid_argument for n < 4.
VerificationReport verify_order(int n, const VerifyOptions& o = {});

// report-v1 JSON, deterministic (fixed key order, no timings).
std::string report_json(const VerificationReport& r, int indent = 2);

}  // namespace crlab
