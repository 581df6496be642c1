#include <stdexcept>

#include "linksom/error.hpp"
#include "linksom/som.hpp"
#include "text.hpp"

namespace linksom {

std::string write_cod(const SomMap& map) {
    const auto& topo = map.topology();
    std::string out = std::to_string(map.dimension());
    out += ' ';
    out += to_string(topo.lattice);
    out += ' ';
    out += std::to_string(topo.xsize);
    out += ' ';
    out += std::to_string(topo.ysize);
    out += ' ';
    out += to_string(map.neighborhood());
    out += '\n';
    for (std::size_t u = 0; u < map.units(); ++u) {
        const auto v = map.unit(u);
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k != 0) out += ' ';
            out += text::format_real(v[k]);
        }
        out += '\n';
    }
    return out;
}

SomMap parse_cod(std::string_view input) {
    const auto lines = text::split_lines(input);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < lines.size() && (text::is_blank(lines[i]) || text::is_comment(lines[i]))) ++i;
    };

    skip();
    if (i == lines.size()) throw FormatError("codebook file has no header");
    const auto header = text::tokens(lines[i]);
    if (header.size() != 5) {
        throw FormatError("codebook header must be 'dimension lattice xsize ysize neighborhood' (line " +
                          std::to_string(i + 1) + ")");
    }
    const auto dim = text::parse_integer(header[0]);
    const auto xs = text::parse_integer(header[2]);
    const auto ys = text::parse_integer(header[3]);
    if (!dim || *dim <= 0 || !xs || *xs <= 0 || !ys || *ys <= 0) {
        throw ParseError(i + 1, "codebook header sizes must be positive integers");
    }
    GridTopology topo;
    Neighborhood kernel = Neighborhood::Bubble;
    try {
        topo = {static_cast<std::size_t>(*xs), static_cast<std::size_t>(*ys), parse_lattice(header[1])};
        kernel = parse_neighborhood(header[4]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(i + 1, e.what());
    }
    ++i;

    const auto dimension = static_cast<std::size_t>(*dim);
    std::vector<double> codebook;
    codebook.reserve(topo.units() * dimension);
    std::size_t vectors = 0;
    for (skip(); i < lines.size(); ++i, skip()) {
        if (vectors == topo.units()) throw ParseError(i + 1, "more codebook vectors than map units");
        const auto toks = text::tokens(lines[i]);
        if (toks.size() < dimension) {
            throw ParseError(i + 1, "expected " + std::to_string(dimension) + " components, found " +
                                        std::to_string(toks.size()));
        }
        // Anything after the vector is a SOM_PAK unit label and is ignored.
        for (std::size_t k = 0; k < dimension; ++k) {
            const auto v = text::parse_real(toks[k]);
            if (!v) throw ParseError(i + 1, "component '" + std::string(toks[k]) + "' is not a number");
            codebook.push_back(*v);
        }
        ++vectors;
    }
    if (vectors != topo.units()) {
        throw FormatError("codebook has " + std::to_string(vectors) + " vectors, map needs " +
                          std::to_string(topo.units()));
    }
    return SomMap(topo, dimension, std::move(codebook), kernel);
}

}  // namespace linksom
