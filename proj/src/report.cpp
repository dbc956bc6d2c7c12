#include <cmath>

#include "json.hpp"

#include "crlab/ford_verify.hpp"

namespace crlab {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double x)
{
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return nullptr;
    return x > 0 ? "inf" : "-inf";
}

ojson check_json(const CheckResult& c)
{
    ojson j;
    j["name"] = c.name;
    j["ran"] = c.ran;
    j["pass"] = c.pass;
    if (!c.ran) return j;
    j["worst_margin"] = number(c.worst_margin());
    ojson items = ojson::array();
    for (const auto& it : c.items) {
        ojson i;
        i["name"] = it.name;
        i["pass"] = it.pass;
        i["required"] = it.required;
        i["value"] = number(it.value);
        i["margin"] = number(it.margin);
        i["samples"] = it.samples;
        if (!it.detail.empty()) i["detail"] = it.detail;
        items.push_back(std::move(i));
    }
    j["items"] = std::move(items);
    return j;
}

}  // namespace

std::string report_json(const VerificationReport& r, int indent)
{
    ojson j;
    j["schema"] = "report-v1";
    ojson p;
    p["alpha2"] = r.alpha2;
    p["side"] = to_string(r.side.kind);
    p["trU"] = r.side.trU;
    if (r.side.kind == SideKind::Elliptic) {
        p["beta"] = r.side.beta;
        p["n"] = r.side.n;
    } else if (r.side.kind == SideKind::Loxodromic) {
        p["l"] = r.side.l;
    }
    j["parameters"] = std::move(p);
    ojson checks = ojson::array();
    for (const auto* c : {&r.incidence, &r.tf, &r.lc, &r.gc}) checks.push_back(check_json(*c));
    j["checks"] = std::move(checks);
    ojson v;
    v["kind"] = to_string(r.verdict.kind);
    if (r.verdict.kind == VerdictKind::SurgerySlope) {
        v["p"] = r.verdict.p;
        v["q"] = r.verdict.q;
    }
    v["text"] = r.verdict.str();
    if (!r.verdict.reason.empty()) v["reason"] = r.verdict.reason;
    j["verdict"] = std::move(v);
    j["notes"] = r.notes;
    return j.dump(indent);
}

}  // namespace crlab
