#pragma once

#include <cstdint>
#include <vector>

#include <omp.h>

namespace crlab::kernels {

// Grid evaluation, index j * nx + i.  The parallel version writes each cell
// exactly once, so it is bit-identical to the serial one.
template <class F>
std::vector<double> grid_serial(int nx, int ny, F&& f)
{
    std::vector<double> out(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out[static_cast<size_t>(j) * nx + i] = f(i, j);
    return out;
}

template <class F>
std::vector<double> grid_parallel(int nx, int ny, F&& f, int workers)
{
    std::vector<double> out(static_cast<size_t>(nx) * ny);
    const long total = static_cast<long>(nx) * ny;
#pragma omp parallel for schedule(static) num_threads(workers > 0 ? workers : 1)
    for (long k = 0; k < total; ++k) out[k] = f(static_cast<int>(k % nx), static_cast<int>(k / nx));
    return out;
}

template <class F>
std::vector<double> grid(int nx, int ny, F&& f, int workers)
{
    if (workers <= 1) return grid_serial(nx, ny, f);
    return grid_parallel(nx, ny, f, workers);
}

// Independent tasks 0..n-1 writing their own slot.
template <class F>
void parallel_for(long n, F&& f, int workers)
{
    if (workers <= 1) {
        for (long k = 0; k < n; ++k) f(k);
        return;
    }
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (long k = 0; k < n; ++k) f(k);
}

struct Components {
    int count = 0;
    std::vector<int> label;  // -1 outside the mask
};

// 4-connected components of a mask on an nx x ny periodic grid.
Components periodic_components(const std::vector<uint8_t>& mask, int nx, int ny);

// Same, without wrap-around.
Components planar_components(const std::vector<uint8_t>& mask, int nx, int ny);

// V - E + F of the cubical complex spanned by the mask on the periodic grid.
long periodic_euler(const std::vector<uint8_t>& mask, int nx, int ny);

}  // namespace crlab::kernels
