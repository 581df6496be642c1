#include "linksom/umatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "text.hpp"

namespace linksom {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

double codebook_distance(const SomMap& map, std::size_t a, std::size_t b) {
    return std::sqrt(squared_distance(map.unit(a), map.unit(b)));
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

CellKind UMatrixGrid::kind(std::size_t x, std::size_t y) const {
    const bool odd_x = x % 2 == 1;
    const bool odd_y = y % 2 == 1;
    if (!odd_x && !odd_y) return CellKind::Unit;
    if (topology.lattice == Lattice::Rectangular && odd_x && odd_y) return CellKind::Diagonal;
    return CellKind::Link;
}

double UMatrixGrid::unit_value(std::size_t unit) const {
    return at(2 * topology.column(unit), 2 * topology.row(unit));
}

CellPos link_cell(const GridTopology& topology, std::size_t a, std::size_t b) {
    const auto neighbours = lattice_neighbors(topology, a);
    if (std::find(neighbours.begin(), neighbours.end(), b) == neighbours.end()) {
        throw std::invalid_argument("units " + std::to_string(a) + " and " + std::to_string(b) +
                                    " are not lattice neighbours");
    }
    if (a > b) std::swap(a, b);
    const std::size_t ca = topology.column(a), ra = topology.row(a);
    const std::size_t cb = topology.column(b), rb = topology.row(b);
    if (ra == rb) return {2 * std::min(ca, cb) + 1, 2 * ra};
    if (topology.lattice == Lattice::Rectangular) return {2 * ca, 2 * ra + 1};
    return {ca + cb, 2 * ra + 1};
}

UMatrixGrid compute_umatrix(const SomMap& map) {
    const GridTopology& topo = map.topology();
    UMatrixGrid grid;
    grid.topology = topo;
    grid.width = 2 * topo.xsize - 1;
    grid.height = 2 * topo.ysize - 1;
    grid.values.assign(grid.width * grid.height, 0.0);

    for (std::size_t u = 0; u < map.units(); ++u) {
        for (const std::size_t v : lattice_neighbors(topo, u)) {
            if (v < u) continue;
            const CellPos c = link_cell(topo, u, v);
            grid.at(c.x, c.y) = codebook_distance(map, u, v);
        }
    }

    if (topo.lattice == Lattice::Rectangular) {
        for (std::size_t r = 0; r + 1 < topo.ysize; ++r) {
            for (std::size_t c = 0; c + 1 < topo.xsize; ++c) {
                const double d1 = codebook_distance(map, topo.unit_at(c, r), topo.unit_at(c + 1, r + 1));
                const double d2 = codebook_distance(map, topo.unit_at(c + 1, r), topo.unit_at(c, r + 1));
                grid.at(2 * c + 1, 2 * r + 1) = (d1 + d2) / 2.0;
            }
        }
    }

    for (std::size_t u = 0; u < map.units(); ++u) {
        std::vector<double> around;
        for (const std::size_t v : lattice_neighbors(topo, u)) {
            const CellPos c = link_cell(topo, u, v);
            around.push_back(grid.at(c.x, c.y));
        }
        grid.at(2 * topo.column(u), 2 * topo.row(u)) = median(std::move(around));
    }
    return grid;
}

double auto_threshold(const UMatrixGrid& grid) {
    std::vector<double> links;
    for (std::size_t y = 0; y < grid.height; ++y) {
        for (std::size_t x = 0; x < grid.width; ++x) {
            if (grid.kind(x, y) == CellKind::Link) links.push_back(grid.at(x, y));
        }
    }
    return median(std::move(links));
}

RegionLabeling segment_regions(const UMatrixGrid& grid, std::optional<double> threshold) {
    const GridTopology& topo = grid.topology;
    RegionLabeling out;
    out.threshold = threshold ? *threshold : auto_threshold(grid);
    if (std::isnan(out.threshold)) throw std::invalid_argument("threshold must be a number");

    const std::size_t n = topo.units();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (const std::size_t v : lattice_neighbors(topo, u)) {
            if (v < u) continue;
            const CellPos c = link_cell(topo, u, v);
            const double d = grid.at(c.x, c.y);
            if (d < out.threshold || d == 0.0) {
                const std::size_t ru = find_root(parent, u);
                const std::size_t rv = find_root(parent, v);
                // Keep the smaller index as root.
                if (ru < rv) parent[rv] = ru;
                else parent[ru] = rv;
            }
        }
    }

    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> id_of_root(n, unassigned);
    out.region_of.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t root = find_root(parent, u);
        if (id_of_root[root] == unassigned) {
            id_of_root[root] = out.regions.size();
            out.regions.emplace_back();
        }
        out.region_of[u] = id_of_root[root];
        out.regions[id_of_root[root]].push_back(u);
    }
    return out;
}

std::string write_umatrix_csv(const UMatrixGrid& grid) {
    std::string out;
    for (std::size_t y = 0; y < grid.height; ++y) {
        for (std::size_t x = 0; x < grid.width; ++x) {
            if (x != 0) out += ',';
            out += text::format_real(grid.at(x, y));
        }
        out += '\n';
    }
    return out;
}

}  // namespace linksom
