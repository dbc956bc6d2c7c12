#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "crlab/figures.hpp"
#include "crlab/ford_verify.hpp"
#include "crlab/kernels.hpp"

using namespace crlab;

namespace {

constexpr double pi = 3.14159265358979323846;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
}

// Half-open [A, B) with step STEP.
std::vector<double> parse_sweep(const std::string& s)
{
    std::vector<double> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError("bad sweep '" + s + "', expected A:B:STEP");
        }
    }
    if (v.size() != 3 || !(v[2] > 0) || !(v[1] > v[0])) throw UsageError("bad sweep '" + s + "', expected A:B:STEP with A < B, STEP > 0");
    std::vector<double> out;
    const long count = static_cast<long>(std::ceil((v[1] - v[0]) / v[2] - 1e-9));
    if (count > 100000) throw UsageError("sweep has too many parameters");
    for (long k = 0; k < count; ++k) out.push_back(v[0] + k * v[2]);
    return out;
}

struct Job {
    std::string tag;
    double alpha2 = 0;
    int n = 0;  // 0 when given by alpha2
};

int cmd_verify(const std::vector<Job>& jobs, const VerifyOptions& base, const std::string& out)
{
    std::filesystem::create_directories(out);
    std::vector<VerificationReport> reps(jobs.size());
    // parameters are independent; one level of parallelism at a time
    const bool over_params = jobs.size() > 1;
    VerifyOptions o = base;
    if (over_params) o.workers = 1;
    kernels::parallel_for(
        static_cast<long>(jobs.size()),
        [&](long k) { reps[k] = jobs[k].n ? verify_order(jobs[k].n, o) : verify(jobs[k].alpha2, o); },
        over_params ? base.workers : 1);
    int code = 0;
    for (size_t k = 0; k < jobs.size(); ++k) {
        const auto& r = reps[k];
        const std::string path = out + "/report-" + jobs[k].tag + ".json";
        write_file(path, report_json(r) + "\n");
        std::cout << jobs[k].tag << " " << r.verdict.str();
        if (!r.verdict.reason.empty()) std::cout << " [" << r.verdict.reason << "]";
        std::cout << " -> " << path << "\n";
        if (r.failed()) code = 1;
    }
    return code;
}

nlohmann::ordered_json classification_json(const Mat3& M, const HermitianSpace& H)
{
    using J = nlohmann::ordered_json;
    J j;
    auto res = verify_su21(M, H);
    j["su21"] = {{"ok", res.ok}, {"unitary_residual", res.unitary}, {"det_residual", res.det}};
    if (!res.ok) return j;
    Isometry g(M, H);
    auto c = classify(g);
    j["class"] = to_string(c.cls);
    j["trace"] = {c.trace.real(), c.trace.imag()};
    j["f"] = c.f;
    J eig = J::array();
    for (const auto& t : c.eig.triples)
        eig.push_back({{"value", {t.value.real(), t.value.imag()}}, {"norm_sign", t.norm_sign}});
    j["eigenvalues"] = eig;
    if (c.cls == IsometryClass::RegularElliptic || c.cls == IsometryClass::NonRegularElliptic) {
        try {
            auto t = elliptic_type(g);
            j["elliptic_type"] = {{"finite", t.finite}, {"text", t.str()}};
            if (t.finite) {
                j["elliptic_type"]["p"] = t.p;
                j["elliptic_type"]["q"] = t.q;
                j["elliptic_type"]["n"] = t.n;
            }
        } catch (const std::invalid_argument& e) {
            j["elliptic_type"] = {{"finite", false}, {"text", e.what()}};
        }
    }
    return j;
}

Mat3 read_matrix(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (!in.eof() || v.size() != 18) throw UsageError(path + ": expected 18 reals (row-major, re/im interleaved)");
    Mat3 M;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) M(r, c) = cplx(v[6 * r + 2 * c], v[6 * r + 2 * c + 1]);
    return M;
}

double env_tol()
{
    const char* s = std::getenv("CRLAB_TOL");
    if (!s) return kTol;
    char* end = nullptr;
    double t = std::strtod(s, &end);
    if (end == s || *end) throw UsageError(std::string("CRLAB_TOL is not a number: ") + s);
    return t;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spherical CR Dehn surgery verifier for the (alpha1, alpha2) representation family"};
    app.require_subcommand(1);
    std::string out = "./out";
    int workers = 1;
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Run the verification conditions and report the verdict");
    int n = 0;
    double alpha2 = 0;
    std::string sweep;
    int grid = 720, samples = 2000;
    auto* on = ver->add_option("--n", n, "Elliptic order of U");
    auto* oa = ver->add_option("--alpha2", alpha2, "Parameter alpha2 in (0, pi/2)");
    auto* os = ver->add_option("--sweep", sweep, "Half-open range A:B:STEP of alpha2");
    on->excludes(oa)->excludes(os);
    oa->excludes(os);
    ver->add_option("--grid", grid, "Torus grid resolution")->capture_default_str();
    ver->add_option("--samples", samples, "Random bisector samples")->capture_default_str();

    auto* figc = app.add_subcommand("figure", "Write a figure as CSV and SVG");
    std::string fname;
    fig::FigureOptions fo;
    figc->add_option("name", fname, "Figure name")->required()->check(CLI::IsMember(fig::figure_names()));
    figc->add_option("--res", fo.res, "Grid resolution")->capture_default_str();
    figc->add_option("--n", fo.n, "Order for disk-projection");
    figc->add_option("--alpha2", fo.alpha2, "Parameter for disk-projection");
    figc->add_option("--samples", fo.samples, "Boundary samples per disk")->capture_default_str();

    auto* cls = app.add_subcommand("classify", "Classify an isometry given by a matrix file or a word");
    std::string matrix, word, model = "siegel";
    double calpha1 = 0, calpha2 = 0;
    auto* om = cls->add_option("--matrix", matrix, "File with 18 reals, row-major, re/im interleaved");
    auto* ow = cls->add_option("--word", word, "Word in s, t, e.g. ts^-1");
    om->excludes(ow);
    cls->add_option("--alpha2", calpha2, "Parameter alpha2 for --word");
    cls->add_option("--alpha1", calpha1, "Parameter alpha1 for --word")->capture_default_str();
    cls->add_option("--model", model, "Hermitian form for --matrix")->check(CLI::IsMember({"siegel", "ball"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const double tol = env_tol();
        if (!(tol >= 1e-14 && tol <= 1e-3)) throw UsageError("tolerance must lie in [1e-14, 1e-3]");
        if (ver->parsed()) {
            if (!*on && !*oa && !*os) throw UsageError("verify needs one of --n, --alpha2, --sweep");
            if (grid < 64) throw UsageError("--grid must be at least 64");
            if (samples < 1) throw UsageError("--samples must be positive");
            std::vector<Job> jobs;
            if (*on) {
                if (n < 4) throw UsageError("--n must be at least 4");
                jobs.push_back({"n" + std::to_string(n), alpha2_for_order(n), n});
            } else {
                std::vector<double> as = *oa ? std::vector<double>{alpha2} : parse_sweep(sweep);
                for (double a : as) {
                    if (!(a > 0 && a < pi / 2)) throw UsageError("alpha2 = " + g17(a) + " is outside (0, pi/2)");
                    jobs.push_back({"alpha2-" + g17(a), a, 0});
                }
            }
            VerifyOptions o;
            o.grid = grid;
            o.samples = samples;
            o.workers = workers;
            o.tol = tol;
            return cmd_verify(jobs, o, out);
        }
        if (figc->parsed()) {
            fo.workers = workers;
            if (fo.res < 64) throw UsageError("--res must be at least 64");
            if (fname == "disk-projection") {
                if (fo.n == 0 && fo.alpha2 == 0) throw UsageError("disk-projection needs --n or --alpha2");
                if (fo.n != 0 && fo.n < 4) throw UsageError("--n must be at least 4");
                if (fo.n == 0 && !(fo.alpha2 > 0 && fo.alpha2 < pi / 2)) throw UsageError("--alpha2 outside (0, pi/2)");
            }
            fig::Figure f;
            try {
                f = fig::make_figure(fname, fo);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            for (const auto& p : fig::write_figure(f, out)) std::cout << p << "\n";
            return 0;
        }
        if (cls->parsed()) {
            Mat3 M;
            HermitianSpace H = model == "ball" ? HermitianSpace::ball() : HermitianSpace::siegel();
            std::string tag;
            if (!matrix.empty()) {
                M = read_matrix(matrix);
                tag = std::filesystem::path(matrix).stem().string();
            } else if (!word.empty()) {
                if (!(std::abs(calpha1) < pi / 2 && std::abs(calpha2) < pi / 2))
                    throw UsageError("word parameters must lie in (-pi/2, pi/2)");
                H = HermitianSpace::siegel();
                try {
                    M = eval_word(build_rep({calpha1, calpha2}), word);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                tag = "word";
            } else {
                throw UsageError("classify needs --matrix or --word");
            }
            auto j = classification_json(M, H);
            if (!word.empty()) {
                j["word"] = word;
                j["alpha1"] = calpha1;
                j["alpha2"] = calpha2;
            }
            std::filesystem::create_directories(out);
            const std::string path = out + "/classify-" + tag + ".json";
            write_file(path, j.dump(2) + "\n");
            std::cout << j.dump(2) << "\n";
            if (!j["su21"]["ok"].get<bool>()) {
                std::cerr << "error: matrix is not in SU(2,1): unitary residual " << j["su21"]["unitary_residual"]
                          << ", det residual " << j["su21"]["det_residual"] << "\n";
                return 2;
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
