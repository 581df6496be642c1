#ifndef LINKSOM_LINKGRAPH_HPP
#define LINKSOM_LINKGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace linksom {

/// One aggregated link record: `weight` links from `source` to `target`.
struct Edge {
    std::size_t source;
    std::size_t target;
    std::uint64_t weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted directed graph over labeled nodes. Nodes keep insertion order,
/// repeated (source, target) pairs are merged by summing their weights, and
/// self-links are stored like any other edge.
class LinkGraph {
public:
    /// Registers `label` if new and returns its index.
    std::size_t add_node(std::string_view label);

    /// Adds `weight` to the (source, target) edge, registering both endpoints.
    void add_edge(std::string_view source, std::string_view target, std::uint64_t weight);

    std::size_t node_count() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t node) const { return labels_.at(node); }

    /// Edges in order of first appearance.
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// Node index for `label`, or node_count() if unknown.
    std::size_t find(std::string_view label) const;

    /// Weight of (source, target), 0 when absent.
    std::uint64_t weight(std::size_t source, std::size_t target) const;

    std::uint64_t total_weight() const noexcept;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Edge> edges_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index_;
};

bool operator==(const LinkGraph& a, const LinkGraph& b);

/// Reads `source<TAB>target<TAB>count` lines. `#` lines are comments, blank
/// lines are skipped, and a line holding only a label (optionally followed
/// by a tab) declares a node without links.
///
/// Throws ParseError naming the offending line, or FormatError when the
/// input declares no nodes at all.
LinkGraph parse_edge_list(std::string_view text);
LinkGraph read_edge_list(std::istream& in);

/// Writes every node as a declaration line followed by all edges, so that
/// parsing the result reproduces node order and edge order exactly.
std::string write_edge_list(const LinkGraph& graph);

enum class Direction { Outgoing, Incoming };
enum class Normalization { Raw, RelativeL1 };

std::string_view to_string(Direction d);
std::string_view to_string(Normalization n);
Direction parse_direction(std::string_view s);
Normalization parse_normalization(std::string_view s);

struct Record {
    std::string label;
    std::vector<double> values;

    friend bool operator==(const Record&, const Record&) = default;
};

/// Labeled real vectors of a common dimension, one per graph node.
struct DataSet {
    std::size_t dimension = 0;
    std::vector<Record> records;
    Direction direction = Direction::Outgoing;
    Normalization normalization = Normalization::Raw;

    std::size_t size() const noexcept { return records.size(); }
    bool empty() const noexcept { return records.empty(); }

    friend bool operator==(const DataSet&, const DataSet&) = default;
};

/// Divides a vector by its component sum; the zero vector is left alone.
void normalize_l1(std::span<double> values);

/// Node i becomes record i. Outgoing reads row i of the adjacency matrix,
/// Incoming reads column i. Self-links land on the diagonal in both cases.
DataSet extract_vectors(const LinkGraph& graph, Direction direction,
                        Normalization normalization = Normalization::Raw);

/// SOM_PAK-style data file: a `# direction=... normalization=...` comment,
/// the dimension on its own line, then one record per line as
/// whitespace-separated reals followed by the label.
std::string write_sompak_dat(const DataSet& data);

/// Inverse of write_sompak_dat. Everything after the last vector component
/// is taken as the label, so labels may contain spaces. Throws FormatError
/// for a missing dimension header and ParseError for malformed records.
DataSet parse_sompak_dat(std::string_view text);

}  // namespace linksom

#endif
