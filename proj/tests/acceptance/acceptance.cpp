// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"

#include "crlab/figures.hpp"
#include "crlab/ford_verify.hpp"

using namespace crlab;
namespace fs = std::filesystem;

namespace {

constexpr double pi = 3.14159265358979323846;
cplx ei(double t) { return std::polar(1.0, t); }

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<std::pair<bool, std::string>> items;
    std::vector<std::string> deviations;  // documented, non-blocking failed items

    void check(bool ok, const std::string& what) { items.push_back({ok, what}); }
    void deviation(bool ok, const std::string& what, const std::string& why)
    {
        items.push_back({ok, what});
        if (!ok) deviations.push_back(why);
    }
    bool pass() const
    {
        return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.first; });
    }
    // only the documented deviations failed
    bool blocking() const
    {
        int failed = 0;
        for (const auto& i : items) failed += !i.first;
        return failed > static_cast<int>(deviations.size());
    }
};

std::string fmt(double x, int prec = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

int run(const std::string& cmd, std::string* out = nullptr)
{
    std::string full = cmd + " 2>&1";
    FILE* p = popen(full.c_str(), "r");
    if (!p) return -1;
    std::string s;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p)) s.append(buf, n);
    int st = pclose(p);
    if (out) *out = s;
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::vector<double>> read_csv(const std::string& path)
{
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<double> r;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const CheckItem* item(const CheckResult& c, const std::string& name)
{
    for (const auto& it : c.items)
        if (it.name == name) return &it;
    return nullptr;
}

bool item_pass(const CheckResult& c, const std::string& name)
{
    auto it = item(c, name);
    return it && it->pass;
}

// ---------------------------------------------------------------------------

Criterion algebraic()
{
    Criterion c{1, "algebraic identities"};
    const auto H = HermitianSpace::siegel();
    double worst_tr = 0, worst_norm = 0, worst_box = 0;
    for (int k = 0; k < 50; ++k) {
        double a = 0.02 + (pi / 2 - 0.04) * k / 49;
        auto r = build_rep({0, a});
        auto p = remarkable_points({0, a});
        double c2 = std::cos(a) * std::cos(a);
        worst_tr = std::max(worst_tr, std::abs(r.U.trace() - 8 * c2));
        worst_norm = std::max({worst_norm, std::abs(H.norm(p.pU) - (4 * c2 - 1.5)),
                               std::abs(H.norm(p.pV) - (4 * c2 - 1.5)), std::abs(H.inner(p.pU, p.pV) + 1.5)});
        Vec3 uv = H.box(p.pU, p.pV), wu = H.box(p.pW, p.pU);
        worst_box = std::max({worst_box, std::abs(H.inner(uv, uv) + 4 * c2 * (4 * c2 - 3)),
                              std::abs(H.inner(uv, wu) + 6 * c2)});
    }
    c.check(worst_tr <= 1e-9, "tr U = 8cos^2 a2 at 50 parameters, residual " + fmt(worst_tr));
    c.check(worst_norm <= 1e-9, "<pU,pU> = <pV,pV> = 4cos^2 a2 - 3/2, <pU,pV> = -3/2, residual " + fmt(worst_norm));
    c.check(worst_box <= 1e-9, "box product Gram entries, residual " + fmt(worst_box));

    auto t = trace_coords(build_rep({0, alpha2_lim()}));
    cplx x0(7.5, -1.5 * std::sqrt(15.0));
    double tr_res = std::max({std::abs(t.z - 3.0), std::abs(t.w - 3.0), std::abs(t.x - x0),
                              std::abs(char_Q(3, 3) - 15), std::abs(char_P(3, 3) - 90)});
    c.check(tr_res <= 1e-9, "trace coordinates (3, 3, 15/2 - (3/2)i sqrt15), Q = 15, P = 90, residual " + fmt(tr_res));
    cplx ws = schwartz_point();
    double sres = std::max(std::abs(ws.real() - 1.09062813494126), std::abs(ws.imag() - 0.557252430478823));
    c.check(sres <= 1e-12, "Schwartz constant to 15 digits, residual " + fmt(sres));

    // printed matrix of rho_1(s^-1 t) at (0, 2pi/3)
    const cplx w = ei(2 * pi / 3);
    const double s2 = std::sqrt(2.0);
    Mat3 M;
    M << 1.0, -s2 * w, -1.0, -s2 * w, 1.0 + 2.0 * w * w, -s2, -1.0, -s2, -2.0 * w * w;
    Isometry g(M, H);
    auto e = eigen(g);
    bool eig_ok = verify_su21(M, H).ok;
    for (cplx ex : {-w * w, -w, cplx(1.0)}) {
        bool found = false;
        for (const auto& tr : e.triples)
            if (std::abs(tr.value - ex) < 1e-9) found = tr.norm_sign == (std::abs(ex - 1.0) < 1e-9 ? -1 : 1);
        eig_ok = eig_ok && found;
    }
    c.check(eig_ok, "eigenvalues {-w^2, -w, 1} with norm signs (+, +, -)");
    auto ty = elliptic_type(g);
    c.deviation(ty.finite && ty.same(1, -1, 9), "elliptic type (1/9, -1/9): computed " + ty.str(),
                "the printed matrix has projective order 6, so its type is " + ty.str() +
                    "; U at order 9 does have type (1/9, -1/9)");
    auto u9 = build_rep({0, alpha2_for_order(9)});
    c.check(elliptic_type(u9.iso(u9.U)).same(1, -1, 9), "type of U at order 9 is (1/9, -1/9)");
    return c;
}

Criterion incidences()
{
    Criterion c{2, "incidence suite"};
    VerifyOptions o;
    double worst = 0;
    int params = 0;
    bool all = true;
    for (int k = 0; k < 10; ++k) {
        double lox = 0.05 + (alpha2_lim() - 0.1) * k / 9;
        double ell = alpha2_lim() + 0.05 + (pi / 2 - alpha2_lim() - 0.1) * k / 9;
        for (double a : {lox, ell}) {
            auto r = incidence_check(make_family(a), o);
            worst = std::max({worst, item(r, "unit_modulus_products")->value, item(r, "product_values")->value});
            all = all && r.pass;
            ++params;
        }
    }
    c.check(worst <= 1e-9, "modulus-one products at " + std::to_string(params) +
                               " parameters (10 on each side of the unipotent one), max residual " + fmt(worst));
    c.check(all, "translated incidences, U-equivariance and the involution symmetry");
    return c;
}

Criterion topology_of_faces(int workers)
{
    Criterion c{3, "TF suite at 720^2"};
    const std::pair<const char*, double> params[] = {
        {"0.5", 0.5},        {"0.7", 0.7},         {"pi/6", pi / 6},
        {"lim", alpha2_lim()}, {"n=9", alpha2_for_order(9)}, {"n=12", alpha2_for_order(12)}};
    VerifyOptions o;
    o.grid = 720;
    o.workers = workers;
    for (const auto& [name, a] : params) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = tf_check(make_family(a), o);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        auto ex = item(r, "face_exclusion_grid");
        c.check(r.pass && item_pass(r, "real_plane_exclusion") && item_pass(r, "complex_line_exclusion") && ex && ex->pass,
                std::string("a2 = ") + name + ": triple-intersection exclusion, grid margin " + fmt(ex ? ex->value : -1));
        c.check(item_pass(r, "bitangency_pA") && item_pass(r, "bitangency_pB"),
                std::string("a2 = ") + name + ": bi-tangency at pA, pB, rank defects " +
                    fmt(item(r, "bitangency_pA")->value) + ", " + fmt(item(r, "bitangency_pB")->value));
        c.check(secs <= 60, std::string("a2 = ") + name + ": runtime " + fmt(secs) + " s");
    }
    return c;
}

Criterion gc_loxodromic(int workers)
{
    Criterion c{4, "GC loxodromic suite"};
    VerifyOptions o;
    o.workers = workers;
    const double lmax = std::acosh(2.5);
    for (int k = 1; k <= 10; ++k) {
        double l = lmax * k / 11;
        double a = std::acos(std::sqrt((1 + 2 * std::cosh(l)) / 8));
        auto r = verify(a, o);
        double margin = std::min(item(r.gc, "guard_outer")->value, item(r.gc, "guard_inner")->value);
        double hres = item(r.gc, "h_identities")->value;
        bool ok = margin > 0 && item_pass(r.gc, "anchors_in_annulus") && item_pass(r.gc, "annulus_sampling") &&
                  hres <= 1e-8 && r.verdict.str() == "SurgerySlope(1,-3)" && std::abs(r.side.l - l) < 1e-9;
        c.check(ok, "l = " + fmt(l, 4) + ": annulus margin " + fmt(margin) + ", h residual " + fmt(hres) + ", " +
                        r.verdict.str());
    }
    return c;
}

Criterion gc_elliptic(int workers)
{
    Criterion c{5, "GC elliptic suite"};
    VerifyOptions o;
    o.workers = workers;
    for (int n : {9, 10, 12, 20, 50}) {
        auto r = verify_order(n, o);
        int census = 0;
        bool census_ok = true;
        for (const auto& it : r.gc.items)
            if (it.name.rfind("census_", 0) == 0) {
                ++census;
                census_ok = census_ok && it.pass;
            }
        bool ok = item_pass(r.gc, "delta_sign") && item_pass(r.gc, "p_beta_certificate") &&
                  item_pass(r.gc, "p_beta_sampling") && item_pass(r.gc, "sector_disjointness") &&
                  item_pass(r.gc, "guard_ray_plus") && item_pass(r.gc, "guard_ray_minus") && census_ok &&
                  r.verdict.str() == "SurgerySlope(1," + std::to_string(n - 3) + ")";
        c.check(ok, "n = " + std::to_string(n) + ": Delta_beta < 0, P_beta certified, sectors disjoint (" +
                        std::to_string(census) + " near-antipodal pairs by census), " + r.verdict.str());
    }
    for (int n = 4; n <= 8; ++n) {
        auto r = verify_order(n, o);
        c.check(r.verdict.kind == VerdictKind::Inconclusive && !r.verdict.reason.empty() && !r.failed(),
                "n = " + std::to_string(n) + ": " + r.verdict.str() + " (" + r.verdict.reason + ")");
    }
    return c;
}

Criterion oracles(int workers)
{
    Criterion c{6, "oracle equivalence"};
    // (a) symmetric triples: closed-form type against the level-set count on the torus
    {
        int agree = 0, total = 0;
        std::string bad;
        auto ball = HermitianSpace::ball();
        Mat3 R;
        const double cs = std::cos(2 * pi / 3), sn = std::sin(2 * pi / 3);
        R << cs, -sn, 0, sn, cs, 0, 0, 0, 1;
        for (double a : {0.3, 0.6, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            Vec3 p(a, 0, 1);
            auto t = symmetric_intersection_type(ball, p, R * p, R * R * p);
            GiraudTorus T(ball, p, R * p, R * R * p);
            bool rec = false;
            auto v = topology_verdict(level_set_topology(T.norm_grid(720, workers), 720), rec);
            ++total;
            if (rec && v == t.type) ++agree; else bad += " a=" + fmt(a);
        }
        auto S = HermitianSpace::siegel();
        for (double a2 : {0.2, 0.9, 1.4}) {
            auto pts = remarkable_points({0, a2});
            auto t = symmetric_intersection_type(S, pts.pU, pts.pV, pts.pW);
            GiraudTorus T(S, pts.pU, pts.pV, pts.pW);
            bool rec = false;
            auto v = topology_verdict(level_set_topology(T.norm_grid(720, workers), 720), rec);
            ++total;
            if (rec && v == t.type) ++agree; else bad += " a2=" + fmt(a2);
        }
        c.check(agree == total, "(a) symmetric-intersection type vs level-set components: " + std::to_string(agree) +
                                    "/" + std::to_string(total) + bad);
    }
    // (b) tangency criterion against the crossing count
    {
        std::mt19937_64 g(2024);
        std::normal_distribution<double> nd(0, 1);
        std::uniform_real_distribution<double> u(0, 2 * pi);
        auto H = HermitianSpace::ball();
        int checked = 0, agree = 0, tangent = 0;
        while (checked < 50) {
            Vec3 p(cplx(nd(g), nd(g)), cplx(nd(g), nd(g)), cplx(nd(g), nd(g)));
            Vec3 q(cplx(nd(g), nd(g)), cplx(nd(g), nd(g)), cplx(nd(g), nd(g)));
            double np = H.norm(p), nq = H.norm(q);
            if (np * nq <= 0) continue;
            q *= std::sqrt(np / nq);
            cplx pq = H.inner(p, q);
            q *= std::abs(pq) / pq;
            if (checked % 2) q = -q;
            cplx alpha = (checked % 3 == 0) ? cplx(1) : (checked % 3 == 1) ? cplx(-1) : ei(u(g));
            Vec3 en, ep;
            if (!line_frame(H, Line{Vec3(q - alpha * p)}, en, ep)) continue;
            Vec3 r = en + ei(u(g)) * ep;
            bool t = tangency_check(H, p, q, r);
            int cc = crossing_count(H, p, q, r);
            agree += (cc >= 0 && t == (cc == 0));
            tangent += t;
            ++checked;
        }
        c.check(agree == 50 && tangent > 0 && tangent < 50,
                "(b) tangency criterion vs crossing count: " + std::to_string(agree) + "/50 agree (" +
                    std::to_string(tangent) + " tangent)");
    }
    // (c) angular diameter against sampling
    {
        auto S = HermitianSpace::siegel();
        double worst = 0;
        for (int n : {9, 10, 12, 20}) {
            auto pts = remarkable_points({0, alpha2_for_order(n)});
            double th = angular_diameter(S, pts.pU, pts.pV);
            auto o = angular_oracle(S, pts.pU, pts.pV, 5000, workers);
            worst = std::max(worst, std::abs(o.max_pairwise - th));
        }
        Vec3 p(0, 0, 1);
        auto B = HermitianSpace::ball();
        for (double r : {0.5, 1.0, 2.0}) {
            Vec3 q(std::sinh(r), 0, std::cosh(r));
            auto o = angular_oracle(B, p, q, 5000, workers);
            worst = std::max(worst, std::abs(o.max_pairwise - angular_diameter(B, p, q)));
        }
        c.check(worst <= 1e-2, "(c) angular diameter vs 5000-sample maximum angle, worst gap " + fmt(worst) + " rad");
    }
    return c;
}

Criterion figures(const std::string& cli, const fs::path& work)
{
    Criterion c{7, "figure reproduction (through the CLI)"};
    const fs::path dir = work / "figures";
    std::string log;
    int rc = run(cli + " --out " + dir.string() + " figure level-sets --res 720", &log);
    if (rc == 0) {
        auto rows = read_csv((dir / "level-sets-grid.csv").string());
        double lo = 1e9, hi = -1e9;
        for (const auto& r : rows) {
            lo = std::min(lo, r[2]);
            hi = std::max(hi, r[2]);
        }
        c.check(std::abs(lo + 1.5) < 1e-9 && std::abs(hi - 3.0) < 1e-9 && rows.size() == 721u * 721u,
                "level-sets at 720: min " + fmt(lo, 12) + ", max " + fmt(hi, 12));
    } else {
        c.check(false, "level-sets: exit " + std::to_string(rc) + " " + log);
    }
    rc = run(cli + " --out " + dir.string() + " figure peach-curve --res 720", &log);
    if (rc == 0) {
        auto rows = read_csv((dir / "peach-curve-singular.csv").string());
        const double step = pi / 720;
        bool lo = false, hi = false;
        for (const auto& r : rows) {
            lo = lo || (std::abs(r[0]) <= step && std::abs(r[1] + alpha2_lim()) <= step);
            hi = hi || (std::abs(r[0]) <= step && std::abs(r[1] - alpha2_lim()) <= step);
        }
        std::string pts;
        for (const auto& r : rows) pts += " (" + fmt(r[0], 4) + ", " + fmt(r[1], 4) + ")";
        c.check(rows.size() == 2 && lo && hi, "peach-curve singular points" + pts + ", expected (0, +-" +
                                                   fmt(alpha2_lim(), 4) + ") within one step");
    } else {
        c.check(false, "peach-curve: exit " + std::to_string(rc) + " " + log);
    }
    rc = run(cli + " --out " + dir.string() + " figure disk-projection --n 20", &log);
    if (rc == 0) {
        auto rows = read_csv((dir / "disk-projection-sectors.csv").string());
        int inside = 0;
        double worst = 0;
        for (const auto& r : rows) {
            inside += r[3] < r[4];
            worst = std::max(worst, r[3] / r[4]);
        }
        auto marked = read_csv((dir / "disk-projection-marked.csv").string());
        c.check(rows.size() == 40 && inside == 40 && marked.size() == 40,
                "disk-projection n = 20: " + std::to_string(inside) + "/40 boundaries inside their sector of width 4 beta "
                "(largest offset " + fmt(worst) + " of the half-width)");
    } else {
        c.check(false, "disk-projection: exit " + std::to_string(rc) + " " + log);
    }
    return c;
}

Criterion determinism(const std::string& cli, const fs::path& work)
{
    Criterion c{8, "determinism of verify --sweep"};
    const std::string sweep = "0.40:0.95:0.05";
    std::vector<fs::path> dirs;
    for (int rep = 0; rep < 2; ++rep)
        for (int w : {1, 8}) {
            fs::path d = work / ("sweep-w" + std::to_string(w) + "-r" + std::to_string(rep));
            fs::remove_all(d);
            std::string log;
            int rc = run(cli + " --out " + d.string() + " --workers " + std::to_string(w) + " verify --sweep " + sweep, &log);
            c.check(rc == 0, "run " + std::to_string(rep + 1) + " with " + std::to_string(w) + " worker(s): exit " +
                                 std::to_string(rc));
            dirs.push_back(d);
        }
    std::map<std::string, std::string> ref;
    for (const auto& e : fs::directory_iterator(dirs[0])) ref[e.path().filename().string()] = slurp(e.path());
    bool same = ref.size() == 11;
    for (size_t k = 1; k < dirs.size(); ++k) {
        std::map<std::string, std::string> other;
        for (const auto& e : fs::directory_iterator(dirs[k])) other[e.path().filename().string()] = slurp(e.path());
        same = same && other == ref;
    }
    c.check(same, std::to_string(ref.size()) + " report files, byte-identical across 4 runs (1 and 8 workers, twice)");
    return c;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::string cli, workdir = "acceptance_work";
    int workers = std::max(1, omp_get_max_threads());
    app.add_option("--cli", cli, "Path to crlab_cli")->required();
    app.add_option("--workdir", workdir, "Scratch directory");
    app.add_option("--workers", workers, "Threads for the library checks");
    CLI11_PARSE(app, argc, argv);
    fs::create_directories(workdir);

    std::vector<Criterion> all;
    all.push_back(algebraic());
    all.push_back(incidences());
    all.push_back(topology_of_faces(workers));
    all.push_back(gc_loxodromic(workers));
    all.push_back(gc_elliptic(workers));
    all.push_back(oracles(workers));
    all.push_back(figures(cli, workdir));
    all.push_back(determinism(cli, workdir));

    bool blocking = false;
    for (const auto& c : all) {
        std::cout << (c.pass() ? "PASS" : "FAIL") << " " << c.id << ": " << c.title;
        if (!c.pass() && !c.blocking()) std::cout << " [known deviation]";
        std::cout << "\n";
        for (const auto& [ok, what] : c.items) std::cout << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
        for (const auto& d : c.deviations) std::cout << "    deviation: " << d << "\n";
        blocking = blocking || c.blocking();
    }
    return blocking ? 1 : 0;
}
