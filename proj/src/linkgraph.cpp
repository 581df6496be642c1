#include "linksom/linkgraph.hpp"

#include <istream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "linksom/error.hpp"
#include "text.hpp"

namespace linksom {

std::size_t LinkGraph::add_node(std::string_view label) {
    if (label.empty()) throw std::invalid_argument("node label must not be empty");
    const std::string key(label);
    const auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const std::size_t id = labels_.size();
    labels_.push_back(key);
    index_.emplace(key, id);
    return id;
}

void LinkGraph::add_edge(std::string_view source, std::string_view target, std::uint64_t weight) {
    const std::size_t s = add_node(source);
    const std::size_t t = add_node(target);
    const auto [it, inserted] = edge_index_.try_emplace({s, t}, edges_.size());
    if (inserted) {
        edges_.push_back({s, t, weight});
    } else {
        edges_[it->second].weight += weight;
    }
}

std::size_t LinkGraph::find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    return it == index_.end() ? labels_.size() : it->second;
}

std::uint64_t LinkGraph::weight(std::size_t source, std::size_t target) const {
    const auto it = edge_index_.find({source, target});
    return it == edge_index_.end() ? 0 : edges_[it->second].weight;
}

std::uint64_t LinkGraph::total_weight() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& e : edges_) sum += e.weight;
    return sum;
}

bool operator==(const LinkGraph& a, const LinkGraph& b) {
    if (a.labels() != b.labels() || a.edges().size() != b.edges().size()) return false;
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
        if (!(a.edges()[i] == b.edges()[i])) return false;
    }
    return true;
}

LinkGraph parse_edge_list(std::string_view input) {
    LinkGraph graph;
    const auto lines = text::split_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const std::string_view line = lines[i];
        if (text::is_blank(line) || text::is_comment(line)) continue;

        const auto fields = text::split(line, '\t');
        const bool declaration =
            fields.size() == 1 || (fields.size() == 2 && text::trim(fields[1]).empty());
        if (declaration) {
            const auto label = text::trim(fields[0]);
            if (label.empty()) throw ParseError(lineno, "empty node label");
            graph.add_node(label);
            continue;
        }
        if (fields.size() != 3) {
            throw ParseError(lineno, "expected source<TAB>target<TAB>count, got " +
                                         std::to_string(fields.size()) + " fields");
        }
        const auto source = text::trim(fields[0]);
        const auto target = text::trim(fields[1]);
        if (source.empty() || target.empty()) throw ParseError(lineno, "empty node label");
        const auto count_token = text::trim(fields[2]);
        const auto count = text::parse_integer(count_token);
        if (!count) throw ParseError(lineno, "link count '" + std::string(count_token) + "' is not an integer");
        if (*count < 0) throw ParseError(lineno, "negative link count " + std::to_string(*count));
        graph.add_edge(source, target, static_cast<std::uint64_t>(*count));
    }
    if (graph.empty()) throw FormatError("edge list declares no nodes");
    return graph;
}

LinkGraph read_edge_list(std::istream& in) {
    const std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_edge_list(content);
}

std::string write_edge_list(const LinkGraph& graph) {
    std::string out;
    for (const auto& label : graph.labels()) {
        out += label;
        out += "\t\n";
    }
    for (const auto& e : graph.edges()) {
        out += graph.label(e.source);
        out += '\t';
        out += graph.label(e.target);
        out += '\t';
        out += std::to_string(e.weight);
        out += '\n';
    }
    return out;
}

std::string_view to_string(Direction d) { return d == Direction::Outgoing ? "outgoing" : "incoming"; }

std::string_view to_string(Normalization n) { return n == Normalization::Raw ? "raw" : "relative_l1"; }

Direction parse_direction(std::string_view s) {
    if (s == "outgoing" || s == "out") return Direction::Outgoing;
    if (s == "incoming" || s == "in") return Direction::Incoming;
    throw std::invalid_argument("unknown direction '" + std::string(s) + "'");
}

Normalization parse_normalization(std::string_view s) {
    if (s == "raw") return Normalization::Raw;
    if (s == "relative_l1" || s == "relative-l1" || s == "l1") return Normalization::RelativeL1;
    throw std::invalid_argument("unknown normalization '" + std::string(s) + "'");
}

void normalize_l1(std::span<double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    if (sum == 0.0) return;
    for (double& v : values) v /= sum;
}

DataSet extract_vectors(const LinkGraph& graph, Direction direction, Normalization normalization) {
    if (graph.empty()) throw std::invalid_argument("extract_vectors: graph has no nodes");
    const std::size_t n = graph.node_count();
    DataSet data;
    data.dimension = n;
    data.direction = direction;
    data.normalization = normalization;
    data.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) data.records.push_back({graph.label(i), std::vector<double>(n, 0.0)});
    for (const auto& e : graph.edges()) {
        const auto [row, col] = direction == Direction::Outgoing ? std::pair{e.source, e.target}
                                                                 : std::pair{e.target, e.source};
        data.records[row].values[col] += static_cast<double>(e.weight);
    }
    if (normalization == Normalization::RelativeL1) {
        for (auto& r : data.records) normalize_l1(r.values);
    }
    return data;
}

std::string write_sompak_dat(const DataSet& data) {
    if (data.empty()) throw std::invalid_argument("write_sompak_dat: data set is empty");
    std::string out = "# direction=";
    out += to_string(data.direction);
    out += " normalization=";
    out += to_string(data.normalization);
    out += '\n';
    out += std::to_string(data.dimension);
    out += '\n';
    for (const auto& r : data.records) {
        if (r.values.size() != data.dimension) throw std::invalid_argument("record '" + r.label + "' has wrong dimension");
        for (std::size_t k = 0; k < r.values.size(); ++k) {
            if (k != 0) out += ' ';
            out += text::format_real(r.values[k]);
        }
        if (!r.label.empty()) {
            out += ' ';
            out += r.label;
        }
        out += '\n';
    }
    return out;
}

namespace {

void read_metadata_comment(std::string_view line, DataSet& data) {
    auto body = text::trim(line);
    body.remove_prefix(1);
    for (const auto tok : text::tokens(body)) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = tok.substr(0, eq);
        const auto value = tok.substr(eq + 1);
        try {
            if (key == "direction") data.direction = parse_direction(value);
            if (key == "normalization") data.normalization = parse_normalization(value);
        } catch (const std::invalid_argument&) {
            // Unrecognized metadata in an ordinary comment is ignored.
        }
    }
}

}  // namespace

DataSet parse_sompak_dat(std::string_view input) {
    DataSet data;
    bool have_dimension = false;
    const auto lines = text::split_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const std::string_view line = lines[i];
        if (text::is_blank(line)) continue;
        if (text::is_comment(line)) {
            if (!have_dimension) read_metadata_comment(line, data);
            continue;
        }
        const auto toks = text::tokens(line);
        if (!have_dimension) {
            const auto dim = text::parse_integer(toks.front());
            if (!dim || *dim <= 0) throw FormatError("missing dimension header (line " + std::to_string(lineno) + ")");
            data.dimension = static_cast<std::size_t>(*dim);
            have_dimension = true;
            continue;
        }
        if (toks.size() < data.dimension) {
            throw ParseError(lineno, "expected " + std::to_string(data.dimension) + " components, found " +
                                         std::to_string(toks.size()));
        }
        Record rec;
        rec.values.reserve(data.dimension);
        for (std::size_t k = 0; k < data.dimension; ++k) {
            const auto v = text::parse_real(toks[k]);
            if (!v) {
                throw ParseError(lineno, "expected " + std::to_string(data.dimension) +
                                             " numeric components, component " + std::to_string(k + 1) + " is '" +
                                             std::string(toks[k]) + "'");
            }
            rec.values.push_back(*v);
        }
        if (toks.size() > data.dimension) {
            const auto* begin = toks[data.dimension].data();
            const auto* end = toks.back().data() + toks.back().size();
            rec.label.assign(begin, end);
        }
        data.records.push_back(std::move(rec));
    }
    if (!have_dimension) throw FormatError("missing dimension header");
    return data;
}

}  // namespace linksom
