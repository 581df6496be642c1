#ifndef LINKSOM_UMATRIX_HPP
#define LINKSOM_UMATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "linksom/som.hpp"

namespace linksom {

enum class CellKind {
    Unit,      // (2c, 2r): median of the unit's link cells
    Link,      // between two lattice neighbours: their codebook distance
    Diagonal,  // rect only, (2c+1, 2r+1): mean of the two crossing diagonal distances
};

struct CellPos {
    std::size_t x;
    std::size_t y;

    friend bool operator==(const CellPos&, const CellPos&) = default;
};

/// U-Matrix on a (2*xsize - 1) x (2*ysize - 1) raster, row-major.
///
/// Hex link cells: units (c, r) and (c', r + 1) share cell (c + c', 2r + 1),
/// so with odd rows shifted right every raster cell is in use on both
/// lattices.
struct UMatrixGrid {
    GridTopology topology;
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> values;

    double at(std::size_t x, std::size_t y) const { return values.at(y * width + x); }
    double& at(std::size_t x, std::size_t y) { return values.at(y * width + x); }
    CellKind kind(std::size_t x, std::size_t y) const;
    double unit_value(std::size_t unit) const;
};

/// Raster cell holding the distance between adjacent units a and b.
/// Throws std::invalid_argument if they are not lattice neighbours.
CellPos link_cell(const GridTopology& topology, std::size_t a, std::size_t b);

UMatrixGrid compute_umatrix(const SomMap& map);

/// Median of all Link cells (0 when the map has a single unit).
double auto_threshold(const UMatrixGrid& grid);

struct RegionLabeling {
    double threshold = 0.0;
    /// Region id of every unit.
    std::vector<std::size_t> region_of;
    /// Units per region, ascending; region ids follow their lowest unit.
    std::vector<std::vector<std::size_t>> regions;
};

/// Connected components of the lattice where neighbours are joined when
/// the link cell between them is below the threshold. Zero-distance links
/// always join, so an all-zero grid is one region for any threshold.
/// With no threshold given, auto_threshold is used.
RegionLabeling segment_regions(const UMatrixGrid& grid, std::optional<double> threshold = std::nullopt);

/// Row-major CSV, one raster row per line.
std::string write_umatrix_csv(const UMatrixGrid& grid);

}  // namespace linksom

#endif
