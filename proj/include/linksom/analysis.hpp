#ifndef LINKSOM_ANALYSIS_HPP
#define LINKSOM_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linksom/linkgraph.hpp"
#include "linksom/som.hpp"

namespace linksom {

// Communities: the nodes sharing one winning unit.

struct Community {
    std::size_t unit;
    std::vector<std::string> members;
};

struct CommunityAssignment {
    std::vector<Community> communities;
    std::vector<std::size_t> unassigned_units;
};

CommunityAssignment communities_from_calibration(const Calibration& cal);

/// `unit,x,y,label` with x = column and y = row, one line per member.
std::string write_communities_csv(const CommunityAssignment& communities, const GridTopology& topology);

// Factions

struct FactionTable {
    /// Faction ids are 1-based.
    std::map<std::string, std::size_t, std::less<>> faction_of;
    std::size_t factions = 0;

    std::optional<std::size_t> find(std::string_view label) const;
};

/// `label<TAB>faction_id` lines, `#` comments. Throws ParseError on a
/// duplicate label or a non-positive id, FormatError when there are no rows.
FactionTable parse_factions(std::string_view text);
std::string write_factions(const FactionTable& table);

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Red, green, blue for the first three factions; further factions get
/// evenly spaced fully saturated hues.
std::vector<Rgb> default_palette(std::size_t factions);

/// Per-unit colour; std::nullopt marks a unit with no records.
struct ColorGrid {
    GridTopology topology;
    std::vector<std::optional<Rgb>> cells;
};

/// Each non-empty unit gets the palette colours blended by the share of its
/// members in each faction, rounded half up per channel.
ColorGrid overlay_factions(const Calibration& cal, const FactionTable& factions, const std::vector<Rgb>& palette,
                           const GridTopology& topology);

/// Baseline faction split: Lloyd's k-means seeded with k distinct random
/// records, at most 100 iterations or until no centre moves by 1e-9.
/// Faction ids follow the lowest record index of each cluster.
FactionTable factions_kmeans(const DataSet& data, std::size_t k, std::uint64_t seed);

// Centrality

using CentralityScores = std::map<std::string, double, std::less<>>;

/// Closeness over outgoing hops of the unweighted digraph (edge iff weight
/// > 0, self-loops ignored), corrected for unreachable nodes:
/// (|R|/(n-1)) * (|R| / sum of distances to R), or 0 when nothing is reachable.
CentralityScores closeness(const LinkGraph& graph);

std::string write_centrality_csv(const CentralityScores& scores, const std::vector<std::string>& order);

/// Real value per unit; std::nullopt for units with no records.
struct GrayGrid {
    GridTopology topology;
    std::vector<std::optional<double>> cells;
};

/// Mean member score per unit. Throws DataError for a label without a score.
GrayGrid overlay_metric(const Calibration& cal, const CentralityScores& scores, const GridTopology& topology);

// Link profiles

struct LinkProfile {
    Direction direction = Direction::Outgoing;
    /// Label of each vector component (the dataset's record labels).
    std::vector<std::string> components;
    std::vector<Record> rows;
};

/// L1-normalized vectors of the selected records, in selection order.
/// Throws DataError for an unknown label.
LinkProfile link_profile(const DataSet& data, const std::vector<std::string>& labels);

}  // namespace linksom

#endif
