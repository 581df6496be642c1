#ifndef LINKSOM_RENDER_HPP
#define LINKSOM_RENDER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linksom/analysis.hpp"
#include "linksom/umatrix.hpp"

namespace linksom {

enum class ImageFormat { PGM, PPM, SVG };

/// Picks the format from a file extension (.pgm, .ppm, .svg).
std::optional<ImageFormat> format_from_path(std::string_view path);

struct ImageSpec {
    std::size_t cell_px = 24;
    ImageFormat format = ImageFormat::PGM;
};

/// Scalar cells on a raster. Row y is drawn shifted right by
/// row_shift[y] half-cells, which is how hex lattices are laid out.
struct GrayRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    bool hexagonal = false;
    std::vector<std::optional<double>> cells;
    std::vector<std::size_t> row_shift;

    std::size_t pixel_width(std::size_t cell_px) const;
    std::size_t pixel_height(std::size_t cell_px) const;
};

GrayRaster to_raster(const GrayGrid& grid);
GrayRaster to_raster(const UMatrixGrid& grid);

/// Direct: larger values are lighter (centrality overlays).
/// Inverted: larger values are darker (U-Matrix: ridges dark, basins light).
enum class GrayScale { Direct, Inverted };

/// Min-max scaled gray levels per cell, std::nullopt for empty cells. A
/// constant raster maps to 128. Throws std::invalid_argument when every
/// cell is empty.
std::vector<std::optional<unsigned>> gray_levels(const GrayRaster& raster, GrayScale scale);

/// Binary PGM (P5) or SVG. Empty cells are black in PGM; in SVG they are
/// white with an asterisk.
std::string render_gray(const GrayRaster& raster, const ImageSpec& spec, GrayScale scale);

/// Text grid of values, `*` for empty cells; companion to a PGM.
std::string gray_report(const GrayRaster& raster);

/// Binary PPM (P6) or SVG. Uncolored units are white with a gray outline.
std::string render_color(const ColorGrid& grid, const ImageSpec& spec);

/// SVG bar chart, one row per profile; bar height is proportional to the
/// relative link strength and bars are cell_px / 2 wide.
std::string render_profile(const LinkProfile& profile, const ImageSpec& spec);

}  // namespace linksom

#endif
