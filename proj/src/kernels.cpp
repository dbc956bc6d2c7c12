#include "crlab/kernels.hpp"

#include <numeric>

namespace crlab::kernels {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

Components components(const std::vector<uint8_t>& mask, int nx, int ny, bool wrap)
{
    UnionFind uf(mask.size());
    auto at = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!mask[at(i, j)]) continue;
            int ir = i + 1, ju = j + 1;
            if (ir == nx && wrap) ir = 0;
            if (ju == ny && wrap) ju = 0;
            if (ir < nx && mask[at(ir, j)]) uf.unite(at(i, j), at(ir, j));
            if (ju < ny && mask[at(i, ju)]) uf.unite(at(i, j), at(i, ju));
        }
    Components c;
    c.label.assign(mask.size(), -1);
    std::vector<int> root_label(mask.size(), -1);
    for (size_t k = 0; k < mask.size(); ++k) {
        if (!mask[k]) continue;
        int r = uf.find(static_cast<int>(k));
        if (root_label[r] < 0) root_label[r] = c.count++;
        c.label[k] = root_label[r];
    }
    return c;
}

}  // namespace

Components periodic_components(const std::vector<uint8_t>& mask, int nx, int ny)
{
    return components(mask, nx, ny, true);
}

Components planar_components(const std::vector<uint8_t>& mask, int nx, int ny)
{
    return components(mask, nx, ny, false);
}

long periodic_euler(const std::vector<uint8_t>& mask, int nx, int ny)
{
    auto m = [&](int i, int j) { return mask[((j + ny) % ny) * nx + (i + nx) % nx] != 0; };
    long V = 0, E = 0, F = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!m(i, j)) continue;
            ++V;
            if (m(i + 1, j)) ++E;
            if (m(i, j + 1)) ++E;
            if (m(i + 1, j) && m(i, j + 1) && m(i + 1, j + 1)) ++F;
        }
    return V - E + F;
}

}  // namespace crlab::kernels
