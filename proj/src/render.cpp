#include "linksom/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "text.hpp"

namespace linksom {

namespace {

constexpr unsigned char kOutline = 160;

struct Box {
    std::size_t x0;
    std::size_t y0;
};

Box cell_box(const GrayRaster& r, std::size_t x, std::size_t y, std::size_t cell_px) {
    return {x * cell_px + r.row_shift[y] * cell_px / 2, y * cell_px};
}

std::string svg_header(std::size_t w, std::size_t h) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + ' ' +
           std::to_string(h) + "\">\n";
}

std::string rgb_attr(unsigned r, unsigned g, unsigned b) {
    return "rgb(" + std::to_string(r) + ',' + std::to_string(g) + ',' + std::to_string(b) + ')';
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// One cell outline: flat-top hexagon inscribed in the box on hex lattices,
// the box itself otherwise.
std::string svg_cell(bool hexagonal, Box b, std::size_t cell_px, const std::string& fill, const std::string& stroke) {
    const std::string paint = " fill=\"" + fill + "\"" + (stroke.empty() ? "" : " stroke=\"" + stroke + "\"");
    if (!hexagonal) {
        return "<rect class=\"cell\" x=\"" + std::to_string(b.x0) + "\" y=\"" + std::to_string(b.y0) + "\" width=\"" +
               std::to_string(cell_px) + "\" height=\"" + std::to_string(cell_px) + "\"" + paint + "/>\n";
    }
    const double s = static_cast<double>(cell_px);
    const double x = static_cast<double>(b.x0);
    const double y = static_cast<double>(b.y0);
    const double xs[] = {x + s / 4, x + 3 * s / 4, x + s, x + 3 * s / 4, x + s / 4, x};
    const double ys[] = {y, y, y + s / 2, y + s, y + s, y + s / 2};
    std::string points;
    for (int i = 0; i < 6; ++i) {
        if (i != 0) points += ' ';
        points += text::format_real(xs[i]) + ',' + text::format_real(ys[i]);
    }
    return "<polygon class=\"cell\" points=\"" + points + "\"" + paint + "/>\n";
}

std::string svg_text(double x, double y, std::string_view body, std::string_view extra = {}) {
    return "<text x=\"" + text::format_real(x) + "\" y=\"" + text::format_real(y) + "\"" + std::string(extra) + ">" +
           escape(body) + "</text>\n";
}

std::string netpbm_header(std::string_view magic, std::size_t w, std::size_t h) {
    return std::string(magic) + '\n' + std::to_string(w) + ' ' + std::to_string(h) + "\n255\n";
}

GrayRaster unit_raster(const GridTopology& topology) {
    GrayRaster r;
    r.width = topology.xsize;
    r.height = topology.ysize;
    r.hexagonal = topology.lattice == Lattice::Hexagonal;
    r.cells.resize(r.width * r.height);
    r.row_shift.resize(r.height, 0);
    if (r.hexagonal && r.height > 1) {
        for (std::size_t y = 1; y < r.height; y += 2) r.row_shift[y] = 1;
    }
    return r;
}

}  // namespace

std::optional<ImageFormat> format_from_path(std::string_view path) {
    auto ends_with = [&](std::string_view ext) {
        if (path.size() < ext.size()) return false;
        auto tail = path.substr(path.size() - ext.size());
        return std::equal(tail.begin(), tail.end(), ext.begin(),
                          [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == b; });
    };
    if (ends_with(".pgm")) return ImageFormat::PGM;
    if (ends_with(".ppm")) return ImageFormat::PPM;
    if (ends_with(".svg")) return ImageFormat::SVG;
    return std::nullopt;
}

std::size_t GrayRaster::pixel_width(std::size_t cell_px) const {
    const std::size_t shift = row_shift.empty() ? 0 : *std::max_element(row_shift.begin(), row_shift.end());
    return width * cell_px + shift * cell_px / 2;
}

std::size_t GrayRaster::pixel_height(std::size_t cell_px) const { return height * cell_px; }

GrayRaster to_raster(const GrayGrid& grid) {
    GrayRaster r = unit_raster(grid.topology);
    if (grid.cells.size() != r.cells.size()) throw std::invalid_argument("gray grid does not match its topology");
    r.cells = grid.cells;
    return r;
}

GrayRaster to_raster(const UMatrixGrid& grid) {
    GrayRaster r;
    r.width = grid.width;
    r.height = grid.height;
    r.hexagonal = grid.topology.lattice == Lattice::Hexagonal;
    r.cells.assign(grid.values.begin(), grid.values.end());
    r.row_shift.resize(r.height, 0);
    if (r.hexagonal) {
        // Unit rows alternate 0 / 1 unit of shift; link rows sit halfway.
        constexpr std::size_t pattern[] = {0, 1, 2, 1};
        for (std::size_t y = 0; y < r.height; ++y) r.row_shift[y] = pattern[y % 4];
    }
    return r;
}

std::vector<std::optional<unsigned>> gray_levels(const GrayRaster& raster, GrayScale scale) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& c : raster.cells) {
        if (!c) continue;
        lo = any ? std::min(lo, *c) : *c;
        hi = any ? std::max(hi, *c) : *c;
        any = true;
    }
    if (!any) throw std::invalid_argument("every cell of the grid is empty");
    std::vector<std::optional<unsigned>> levels(raster.cells.size());
    for (std::size_t i = 0; i < raster.cells.size(); ++i) {
        const auto& c = raster.cells[i];
        if (!c) continue;
        if (hi == lo) {
            levels[i] = 128;
            continue;
        }
        auto level = static_cast<unsigned>(std::lround(255.0 * (*c - lo) / (hi - lo)));
        if (scale == GrayScale::Inverted) level = 255 - level;
        levels[i] = level;
    }
    return levels;
}

std::string render_gray(const GrayRaster& raster, const ImageSpec& spec, GrayScale scale) {
    if (raster.cells.empty()) throw std::invalid_argument("grid is empty");
    if (spec.cell_px == 0) throw std::invalid_argument("cell size must be positive");
    const auto levels = gray_levels(raster, scale);
    const std::size_t w = raster.pixel_width(spec.cell_px);
    const std::size_t h = raster.pixel_height(spec.cell_px);

    if (spec.format == ImageFormat::PGM) {
        std::string pixels(w * h, static_cast<char>(255));
        for (std::size_t y = 0; y < raster.height; ++y) {
            for (std::size_t x = 0; x < raster.width; ++x) {
                const auto& level = levels[y * raster.width + x];
                const auto value = static_cast<char>(level ? *level : 0);
                const Box b = cell_box(raster, x, y, spec.cell_px);
                for (std::size_t py = b.y0; py < b.y0 + spec.cell_px; ++py) {
                    std::fill_n(pixels.begin() + static_cast<std::ptrdiff_t>(py * w + b.x0), spec.cell_px, value);
                }
            }
        }
        return netpbm_header("P5", w, h) + pixels;
    }
    if (spec.format != ImageFormat::SVG) throw std::invalid_argument("gray grids render to PGM or SVG");

    std::string out = svg_header(w, h);
    std::string marks;
    const double half = static_cast<double>(spec.cell_px) / 2.0;
    for (std::size_t y = 0; y < raster.height; ++y) {
        for (std::size_t x = 0; x < raster.width; ++x) {
            const auto& level = levels[y * raster.width + x];
            const Box b = cell_box(raster, x, y, spec.cell_px);
            if (level) {
                out += svg_cell(raster.hexagonal, b, spec.cell_px, rgb_attr(*level, *level, *level), "");
            } else {
                out += svg_cell(raster.hexagonal, b, spec.cell_px, "white", rgb_attr(kOutline, kOutline, kOutline));
                marks += svg_text(static_cast<double>(b.x0) + half, static_cast<double>(b.y0) + half, "*",
                                  " text-anchor=\"middle\" dominant-baseline=\"central\"");
            }
        }
    }
    return out + marks + "</svg>\n";
}

std::string gray_report(const GrayRaster& raster) {
    std::string out;
    for (std::size_t y = 0; y < raster.height; ++y) {
        out.append(raster.row_shift.empty() ? 0 : raster.row_shift[y], ' ');
        for (std::size_t x = 0; x < raster.width; ++x) {
            if (x != 0) out += ' ';
            const auto& c = raster.cells[y * raster.width + x];
            out += c ? text::format_real(*c) : "*";
        }
        out += '\n';
    }
    return out;
}

std::string render_color(const ColorGrid& grid, const ImageSpec& spec) {
    if (spec.cell_px == 0) throw std::invalid_argument("cell size must be positive");
    const GrayRaster layout = unit_raster(grid.topology);
    if (grid.cells.size() != layout.cells.size()) throw std::invalid_argument("color grid does not match its topology");
    const std::size_t w = layout.pixel_width(spec.cell_px);
    const std::size_t h = layout.pixel_height(spec.cell_px);

    if (spec.format == ImageFormat::PPM) {
        std::string pixels(w * h * 3, static_cast<char>(255));
        for (std::size_t y = 0; y < layout.height; ++y) {
            for (std::size_t x = 0; x < layout.width; ++x) {
                const auto& c = grid.cells[y * layout.width + x];
                const Box b = cell_box(layout, x, y, spec.cell_px);
                for (std::size_t py = 0; py < spec.cell_px; ++py) {
                    for (std::size_t px = 0; px < spec.cell_px; ++px) {
                        Rgb colour{255, 255, 255};
                        if (c) {
                            colour = *c;
                        } else if (px == 0 || py == 0 || px + 1 == spec.cell_px || py + 1 == spec.cell_px) {
                            colour = {kOutline, kOutline, kOutline};
                        }
                        const std::size_t at = ((b.y0 + py) * w + b.x0 + px) * 3;
                        pixels[at] = static_cast<char>(colour.r);
                        pixels[at + 1] = static_cast<char>(colour.g);
                        pixels[at + 2] = static_cast<char>(colour.b);
                    }
                }
            }
        }
        return netpbm_header("P6", w, h) + pixels;
    }
    if (spec.format != ImageFormat::SVG) throw std::invalid_argument("color grids render to PPM or SVG");

    std::string out = svg_header(w, h);
    for (std::size_t y = 0; y < layout.height; ++y) {
        for (std::size_t x = 0; x < layout.width; ++x) {
            const auto& c = grid.cells[y * layout.width + x];
            const Box b = cell_box(layout, x, y, spec.cell_px);
            if (c) {
                out += svg_cell(layout.hexagonal, b, spec.cell_px, rgb_attr(c->r, c->g, c->b), "");
            } else {
                out += svg_cell(layout.hexagonal, b, spec.cell_px, "white", rgb_attr(kOutline, kOutline, kOutline));
            }
        }
    }
    return out + "</svg>\n";
}

std::string render_profile(const LinkProfile& profile, const ImageSpec& spec) {
    if (profile.rows.empty()) throw std::invalid_argument("no profiles to render");
    if (spec.cell_px < 2) throw std::invalid_argument("cell size must be at least 2");
    const std::size_t bar_w = spec.cell_px / 2;
    const std::size_t row_h = spec.cell_px * 2;
    const std::size_t gap = spec.cell_px / 2;
    const std::size_t label_w = spec.cell_px * 6;
    const std::size_t axis_h = spec.cell_px * 4;
    const std::size_t n = profile.components.size();
    const std::size_t w = label_w + n * bar_w + gap;
    const std::size_t h = profile.rows.size() * (row_h + gap) + axis_h;

    std::string out = svg_header(w, h);
    for (std::size_t i = 0; i < profile.rows.size(); ++i) {
        const auto& row = profile.rows[i];
        const std::size_t base = i * (row_h + gap) + row_h;
        out += svg_text(0.0, static_cast<double>(base), row.label);
        for (std::size_t k = 0; k < row.values.size() && k < n; ++k) {
            const double v = row.values[k];
            if (v <= 0.0) continue;
            const double bar_h = v * static_cast<double>(row_h);
            out += "<rect class=\"bar\" x=\"" + std::to_string(label_w + k * bar_w) + "\" y=\"" +
                   text::format_real(static_cast<double>(base) - bar_h) + "\" width=\"" + std::to_string(bar_w) +
                   "\" height=\"" + text::format_real(bar_h) + "\" fill=\"" + rgb_attr(40, 40, 40) + "\"/>\n";
        }
    }
    const std::size_t axis_y = profile.rows.size() * (row_h + gap) + gap;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = static_cast<double>(label_w + k * bar_w) + static_cast<double>(bar_w) / 2.0;
        const std::string rotate = " transform=\"rotate(90 " + text::format_real(x) + ' ' +
                                   std::to_string(axis_y) + ")\" font-size=\"" + std::to_string(bar_w) + "\"";
        out += svg_text(x, static_cast<double>(axis_y), profile.components[k], rotate);
    }
    out += svg_text(0.0, static_cast<double>(h - gap / 2), std::string(to_string(profile.direction)) + " links");
    return out + "</svg>\n";
}

}  // namespace linksom
