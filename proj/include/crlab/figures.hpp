#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crlab/ford_verify.hpp"

namespace crlab::fig {

// Node grid on [x0, x1] x [y0, y1], value index j * nx + i.
struct Grid2 {
    int nx = 0, ny = 0;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    std::vector<double> v;

    double x(int i) const { return nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0; }
    double y(int j) const { return ny > 1 ? y0 + (y1 - y0) * j / (ny - 1) : y0; }
    double at(int i, int j) const { return v[static_cast<size_t>(j) * nx + i]; }
};

using Pt = std::pair<double, double>;

struct Polyline {
    std::string label;
    std::vector<Pt> pts;
    bool closed = false;
};

struct Marker {
    std::string label;
    Pt at;
};

// CSV table: header plus numeric rows.
struct Table {
    std::string suffix;  // file name part, e.g. "grid"
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Figure {
    std::string name;
    std::vector<Table> tables;
    std::vector<Polyline> lines;
    std::vector<Marker> markers;
    double vx0 = -1, vx1 = 1, vy0 = -1, vy1 = 1;  // viewBox in mathematical coordinates
};

struct FigureOptions {
    int res = 720;
    int n = 0;          // disk-projection order (0: use alpha2)
    double alpha2 = 0;  // disk-projection parameter when n = 0
    int samples = 512;  // boundary samples per disk
    int workers = 1;
};

const std::vector<std::string>& figure_names();

// g(theta, phi) = cos theta + cos phi + cos(phi - theta) on [0, 2pi]^2.
Grid2 level_sets_grid(int res, int workers = 1);

// Goldman's f at tr rho(ts^-1) over (alpha1, alpha2) in [-pi/2, pi/2]^2.
Grid2 peach_grid(int res, int workers = 1);
// Cells on the zero set where |grad f| has a strict local minimum well below the
// typical value along the curve.
std::vector<Pt> peach_singular_points(const Grid2& g);

// D(4cos^2 a1, 4cos^2 a2) over the same square.
Grid2 region_z_grid(int res, int workers = 1);

// Segments of the level set {v = level} by marching squares.
std::vector<std::pair<Pt, Pt>> contour(const Grid2& g, double level);

// On the slice z = 3 of the character variety, in the w-plane: the branch curve
// Q^2 = 4P of the projection to w.  The other curve is goldman_f(w) = 0.
double branch_function(cplx w);

struct DiskBoundary {
    int family = 1;  // +1 or -1
    int k = 0;
    std::vector<ExtC> boundary;
    double center_arg = 0;  // predicted sector center (elliptic)
    double max_offset = 0;  // largest |arg - center| over the boundary
};

struct DiskProjection {
    double alpha2 = 0;
    ParamSide side;
    std::vector<DiskBoundary> disks;
    std::vector<std::pair<std::string, ExtC>> marked;  // psi(U^k pA), psi(U^k pB)
    double sector_half_width = 0;                      // 2 beta (elliptic)
};

// Elliptic of order n: D_k^+ and D_k^- for k = 0..n-1; loxodromic: k = -2..2.
DiskProjection disk_projection(double alpha2, int samples = 512, int workers = 1);

// Throws std::invalid_argument on an unknown name or bad options.
Figure make_figure(const std::string& name, const FigureOptions& o);

// 17 significant digits, header row.
std::string to_csv(const Table& t);
// 800 x 800 canvas, viewBox in mathematical coordinates, precision 9.
std::string to_svg(const Figure& f);

// Writes <dir>/<name>[-suffix].csv and <dir>/<name>.svg; returns the paths.
std::vector<std::string> write_figure(const Figure& f, const std::string& dir);

}  // namespace crlab::fig
