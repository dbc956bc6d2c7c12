#include "crlab/figures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

#include "crlab/kernels.hpp"

namespace crlab::fig {

namespace {

constexpr double pi = 3.14159265358979323846;

Grid2 eval_grid(int nx, int ny, double x0, double x1, double y0, double y1, int workers,
                const std::function<double(double, double)>& f)
{
    Grid2 g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.v = kernels::grid(nx, ny, [&](int i, int j) { return f(g.x(i), g.y(j)); }, workers);
    return g;
}

Table grid_table(const Grid2& g, const std::string& xn, const std::string& yn, const std::string& vn)
{
    Table t;
    t.suffix = "grid";
    t.header = {xn, yn, vn};
    t.rows.reserve(g.v.size());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) t.rows.push_back({g.x(i), g.y(j), g.at(i, j)});
    return t;
}

void add_contour(Figure& f, const Grid2& g, double level, const std::string& label)
{
    for (const auto& [a, b] : contour(g, level)) f.lines.push_back({label, {a, b}, false});
}

std::string num(double x, int digits)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

double arg_offset(cplx w, double center) { return std::abs(std::remainder(std::arg(w) - center, 2 * pi)); }

int odd(int res) { return res | 1; }

}  // namespace

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> names = {"peach-curve",     "region-z",    "level-sets",
                                                   "disk-projection", "spinal-trace", "schwartz-slice"};
    return names;
}

Grid2 level_sets_grid(int res, int workers)
{
    return eval_grid(res + 1, res + 1, 0, 2 * pi, 0, 2 * pi, workers,
                     [](double t, double p) { return std::cos(t) + std::cos(p) + std::cos(p - t); });
}

Grid2 peach_grid(int res, int workers)
{
    const int n = odd(res);
    return eval_grid(n, n, -pi / 2, pi / 2, -pi / 2, pi / 2, workers, [](double a1, double a2) {
        auto rep = build_rep({a1, a2});
        return goldman_f(rep.V.trace());
    });
}

Grid2 region_z_grid(int res, int workers)
{
    const int n = odd(res);
    return eval_grid(n, n, -pi / 2, pi / 2, -pi / 2, pi / 2, workers,
                     [](double a1, double a2) { return region_Z({a1, a2}).value; });
}

std::vector<Pt> peach_singular_points(const Grid2& g)
{
    const double hx = (g.x1 - g.x0) / (g.nx - 1), hy = (g.y1 - g.y0) / (g.ny - 1);
    auto grad = [&](int i, int j) {
        int il = std::max(i - 1, 0), ir = std::min(i + 1, g.nx - 1);
        int jl = std::max(j - 1, 0), jr = std::min(j + 1, g.ny - 1);
        double gx = (g.at(ir, j) - g.at(il, j)) / ((ir - il) * hx);
        double gy = (g.at(i, jr) - g.at(i, jl)) / ((jr - jl) * hy);
        return std::hypot(gx, gy);
    };
    auto on_curve = [&](int i, int j) {
        if (i + 1 >= g.nx || j + 1 >= g.ny) return false;
        bool s = g.at(i, j) > 0;
        return (g.at(i + 1, j) > 0) != s || (g.at(i, j + 1) > 0) != s || (g.at(i + 1, j + 1) > 0) != s;
    };
    std::vector<std::array<double, 3>> cells;  // i, j, |grad|
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (on_curve(i, j)) cells.push_back({double(i), double(j), grad(i, j)});
    if (cells.empty()) return {};
    std::vector<double> gs;
    for (const auto& c : cells) gs.push_back(c[2]);
    std::nth_element(gs.begin(), gs.begin() + gs.size() / 2, gs.end());
    const double median = gs[gs.size() / 2];
    const int radius = 4;
    std::vector<Pt> out;
    for (const auto& c : cells) {
        if (c[2] > 0.02 * median) continue;
        bool minimal = true;
        for (const auto& d : cells)
            if (&d != &c && std::abs(d[0] - c[0]) <= radius && std::abs(d[1] - c[1]) <= radius &&
                (d[2] < c[2] || (d[2] == c[2] && (d[1] < c[1] || (d[1] == c[1] && d[0] < c[0]))))) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back({g.x(int(c[0])), g.y(int(c[1]))});
    }
    return out;
}

std::vector<std::pair<Pt, Pt>> contour(const Grid2& g, double level)
{
    std::vector<std::pair<Pt, Pt>> segs;
    auto lerp = [&](int i0, int j0, int i1, int j1) {
        double a = g.at(i0, j0) - level, b = g.at(i1, j1) - level;
        double t = a / (a - b);
        return Pt{g.x(i0) + t * (g.x(i1) - g.x(i0)), g.y(j0) + t * (g.y(j1) - g.y(j0))};
    };
    for (int j = 0; j + 1 < g.ny; ++j)
        for (int i = 0; i + 1 < g.nx; ++i) {
            // corners 0:(i,j) 1:(i+1,j) 2:(i+1,j+1) 3:(i,j+1); edges between consecutive corners
            const int ci[4] = {i, i + 1, i + 1, i}, cj[4] = {j, j, j + 1, j + 1};
            bool up[4];
            for (int k = 0; k < 4; ++k) up[k] = g.at(ci[k], cj[k]) > level;
            std::vector<Pt> cross;
            for (int k = 0; k < 4; ++k) {
                int m = (k + 1) % 4;
                if (up[k] != up[m]) cross.push_back(lerp(ci[k], cj[k], ci[m], cj[m]));
            }
            if (cross.size() == 2) {
                segs.push_back({cross[0], cross[1]});
            } else if (cross.size() == 4) {
                // saddle: pair edges according to the center value
                double c = (g.at(i, j) + g.at(i + 1, j) + g.at(i + 1, j + 1) + g.at(i, j + 1)) / 4 - level;
                if ((c > 0) == up[0]) {
                    segs.push_back({cross[0], cross[1]});
                    segs.push_back({cross[2], cross[3]});
                } else {
                    segs.push_back({cross[3], cross[0]});
                    segs.push_back({cross[1], cross[2]});
                }
            }
        }
    return segs;
}

double branch_function(cplx w)
{
    const cplx z = 3;
    double Q = char_Q(z, w);
    return Q * Q - 4 * char_P(z, w);
}

DiskProjection disk_projection(double alpha2, int samples, int workers)
{
    auto f = make_family(alpha2);
    DiskProjection out;
    out.alpha2 = alpha2;
    out.side = f.side;
    auto chart = pw_chart(f);
    const bool ell = f.side.kind == SideKind::Elliptic;
    if (ell && f.side.n == 0) throw std::invalid_argument("disk-projection needs finite order or a loxodromic parameter");
    const double be = f.side.beta, l = f.side.l;
    out.sector_half_width = ell ? 2 * be : 2 * l;
    std::vector<std::pair<int, int>> jobs;
    const int k0 = ell ? 0 : -2, k1 = ell ? f.side.n - 1 : 2;
    for (int fam : {1, -1})
        for (int k = k0; k <= k1; ++k) jobs.push_back({fam, k});
    out.disks.resize(jobs.size());
    kernels::parallel_for(
        static_cast<long>(jobs.size()),
        [&](long idx) {
            auto [fam, k] = jobs[idx];
            auto d = project_bisector(chart, fam > 0 ? f.plus(k) : f.minus(k), samples);
            DiskBoundary& b = out.disks[idx];
            b.family = fam;
            b.k = k;
            b.boundary = d.boundary;
            // D_k^+ sits around 2k beta - beta/2, D_k^- around 2k beta + beta/2 (arguments,
            // or log-moduli in units of l on the loxodromic side)
            const double c = 2 * k + (fam > 0 ? -0.5 : 0.5);
            b.center_arg = ell ? c * be : c * l;
            for (const auto& w : b.boundary) {
                double off = w.inf ? INFINITY
                             : ell ? arg_offset(w.z, b.center_arg)
                                   : std::abs(std::log(std::abs(w.z)) - b.center_arg);
                b.max_offset = std::max(b.max_offset, off);
            }
        },
        workers);
    for (int k = k0; k <= k1; ++k) {
        out.marked.push_back({"A" + std::to_string(k), chart_value(chart, f.Uk(k, f.pts.pA))});
        out.marked.push_back({"B" + std::to_string(k), chart_value(chart, f.Uk(k, f.pts.pB))});
    }
    return out;
}

Figure make_figure(const std::string& name, const FigureOptions& o)
{
    if (o.res < 64) throw std::invalid_argument("resolution must be at least 64");
    Figure f;
    f.name = name;
    if (name == "level-sets") {
        auto g = level_sets_grid(o.res, o.workers);
        f.tables.push_back(grid_table(g, "theta", "phi", "g"));
        for (double lv : {-1.0, -0.5, 0.0, 1.0, 2.0}) add_contour(f, g, lv, "level " + num(lv, 3));
        f.markers.push_back({"min", {2 * pi / 3, 4 * pi / 3}});
        f.markers.push_back({"min", {4 * pi / 3, 2 * pi / 3}});
        f.markers.push_back({"max", {0, 0}});
        f.vx0 = f.vy0 = 0;
        f.vx1 = f.vy1 = 2 * pi;
    } else if (name == "peach-curve" || name == "region-z") {
        auto g = peach_grid(o.res, o.workers);
        if (name == "peach-curve") {
            f.tables.push_back(grid_table(g, "alpha1", "alpha2", "f"));
            Table s;
            s.suffix = "singular";
            s.header = {"alpha1", "alpha2"};
            for (const auto& p : peach_singular_points(g)) {
                s.rows.push_back({p.first, p.second});
                f.markers.push_back({"singular", p});
            }
            f.tables.push_back(s);
            add_contour(f, g, 0, "unipotent");
        } else {
            auto z = region_z_grid(o.res, o.workers);
            f.tables.push_back(grid_table(z, "alpha1", "alpha2", "D"));
            add_contour(f, z, 0, "region boundary");
            add_contour(f, g, 0, "unipotent");
        }
        f.vx0 = f.vy0 = -pi / 2;
        f.vx1 = f.vy1 = pi / 2;
    } else if (name == "disk-projection") {
        if (o.n != 0 && o.n < 4) throw std::invalid_argument("order must be at least 4");
        const double a2 = o.n ? alpha2_for_order(o.n) : o.alpha2;
        if (!(a2 > 0 && a2 < pi / 2)) throw std::invalid_argument("alpha2 must lie in (0, pi/2)");
        auto dp = disk_projection(a2, o.samples, o.workers);
        Table b, m, s;
        b.suffix = "boundary";
        b.header = {"family", "k", "re", "im"};
        m.suffix = "marked";
        m.header = {"point", "k", "re", "im"};
        s.suffix = "sectors";
        s.header = {"family", "k", "center", "max_offset", "half_width"};
        double R = 1;
        for (const auto& d : dp.disks) {
            Polyline pl{(d.family > 0 ? "D+" : "D-") + std::to_string(d.k), {}, true};
            for (const auto& w : d.boundary) {
                if (w.inf) continue;
                b.rows.push_back({double(d.family), double(d.k), w.z.real(), w.z.imag()});
                pl.pts.push_back({w.z.real(), w.z.imag()});
            }
            f.lines.push_back(std::move(pl));
            s.rows.push_back({double(d.family), double(d.k), d.center_arg, d.max_offset, dp.sector_half_width});
        }
        for (const auto& [label, w] : dp.marked) {
            if (w.inf) continue;
            m.rows.push_back({label[0] == 'A' ? 0.0 : 1.0, std::stod(label.substr(1)), w.z.real(), w.z.imag()});
            f.markers.push_back({label, {w.z.real(), w.z.imag()}});
            R = std::max(R, std::abs(w.z));
        }
        if (dp.side.kind == SideKind::Elliptic) {
            Polyline uc{"unit circle", {}, true};
            for (int k = 0; k < 360; ++k) uc.pts.push_back({std::cos(2 * pi * k / 360), std::sin(2 * pi * k / 360)});
            f.lines.push_back(std::move(uc));
        }
        f.tables = {b, m, s};
        R *= 1.25;
        f.vx0 = f.vy0 = -R;
        f.vx1 = f.vy1 = R;
    } else if (name == "spinal-trace" || name == "schwartz-slice") {
        const cplx ws = schwartz_point();
        const bool zoom = name == "schwartz-slice";
        const double cx = zoom ? ws.real() : 1, cy = zoom ? ws.imag() : 0, h = zoom ? 0.25 : 4.5;
        auto gf = eval_grid(o.res + 1, o.res + 1, cx - h, cx + h, cy - h, cy + h, o.workers,
                            [](double x, double y) { return goldman_f(cplx(x, y)); });
        auto gb = eval_grid(o.res + 1, o.res + 1, cx - h, cx + h, cy - h, cy + h, o.workers,
                            [](double x, double y) { return branch_function(cplx(x, y)); });
        Table t;
        t.suffix = "grid";
        t.header = {"re_w", "im_w", "f", "branch"};
        for (int j = 0; j < gf.ny; ++j)
            for (int i = 0; i < gf.nx; ++i) t.rows.push_back({gf.x(i), gf.y(j), gf.at(i, j), gb.at(i, j)});
        f.tables.push_back(std::move(t));
        add_contour(f, gf, 0, "f = 0");
        add_contour(f, gb, 0, "branch");
        // image of the real slice alpha1 = 0
        Table sl;
        sl.suffix = "slice";
        sl.header = {"alpha2", "re_w", "im_w"};
        Polyline path{"alpha1 = 0", {}, false};
        const int m = o.res;
        for (int k = 1; k < m; ++k) {
            double a2 = -pi / 2 + pi * k / m;
            cplx w = trace_coords(build_rep({0, a2})).w;
            sl.rows.push_back({a2, w.real(), w.imag()});
            path.pts.push_back({w.real(), w.imag()});
        }
        f.tables.push_back(std::move(sl));
        f.lines.push_back(std::move(path));
        Table pt;
        pt.suffix = "schwartz";
        pt.header = {"re_w", "im_w", "f", "branch"};
        pt.rows.push_back({ws.real(), ws.imag(), goldman_f(ws), branch_function(ws)});
        f.tables.push_back(std::move(pt));
        f.markers.push_back({"w_sch", {ws.real(), ws.imag()}});
        f.vx0 = cx - h;
        f.vx1 = cx + h;
        f.vy0 = cy - h;
        f.vy1 = cy + h;
    } else {
        throw std::invalid_argument("unknown figure: " + name);
    }
    return f;
}

std::string to_csv(const Table& t)
{
    std::string s;
    for (size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
    s += '\n';
    for (const auto& r : t.rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            if (i) s += ',';
            s += num(r[i], 17);
        }
        s += '\n';
    }
    return s;
}

std::string to_svg(const Figure& f)
{
    const double w = f.vx1 - f.vx0, h = f.vy1 - f.vy0;
    const double stroke = std::max(w, h) / 800;
    auto P = [](double x) { return num(x, 9); };
    // y is flipped so that the picture has the usual orientation
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"" + P(f.vx0) +
                    " " + P(-f.vy1) + " " + P(w) + " " + P(h) + "\">\n";
    s += "<title>" + f.name + "</title>\n";
    s += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" + P(stroke) + "\">\n";
    std::map<std::string, int> colors;
    static const char* palette[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#555555"};
    auto color = [&](const std::string& label) {
        std::string key = label.substr(0, 2) == "D+" ? "D+" : label.substr(0, 2) == "D-" ? "D-" : label;
        auto it = colors.find(key);
        if (it == colors.end()) it = colors.emplace(key, static_cast<int>(colors.size()) % 6).first;
        return palette[it->second];
    };
    // consecutive lines with the same label share one path
    for (size_t i = 0; i < f.lines.size();) {
        const std::string& label = f.lines[i].label;
        std::string d;
        for (; i < f.lines.size() && f.lines[i].label == label; ++i) {
            const auto& pl = f.lines[i];
            for (size_t k = 0; k < pl.pts.size(); ++k)
                d += (k ? " L" : (d.empty() ? "M" : " M")) + P(pl.pts[k].first) + " " + P(pl.pts[k].second);
            if (pl.closed && !pl.pts.empty()) d += " Z";
        }
        if (!d.empty()) s += "<path data-label=\"" + label + "\" stroke=\"" + color(label) + "\" d=\"" + d + "\"/>\n";
    }
    for (const auto& m : f.markers)
        s += "<circle data-label=\"" + m.label + "\" cx=\"" + P(m.at.first) + "\" cy=\"" + P(m.at.second) + "\" r=\"" +
             P(4 * stroke) + "\" fill=\"black\"/>\n";
    s += "</g>\n</svg>\n";
    return s;
}

std::vector<std::string> write_figure(const Figure& f, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    auto put = [&](const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << body;
        paths.push_back(path);
    };
    for (const auto& t : f.tables)
        put(dir + "/" + f.name + (t.suffix.empty() ? "" : "-" + t.suffix) + ".csv", to_csv(t));
    put(dir + "/" + f.name + ".svg", to_svg(f));
    return paths;
}

}  // namespace crlab::fig
