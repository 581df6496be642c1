#include "linksom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "linksom/error.hpp"
#include "linksom/rng.hpp"
#include "text.hpp"

namespace linksom {

CommunityAssignment communities_from_calibration(const Calibration& cal) {
    CommunityAssignment out;
    for (std::size_t u = 0; u < cal.per_unit.size(); ++u) {
        if (cal.per_unit[u].empty()) {
            out.unassigned_units.push_back(u);
        } else {
            out.communities.push_back({u, cal.per_unit[u]});
        }
    }
    return out;
}

std::string write_communities_csv(const CommunityAssignment& communities, const GridTopology& topology) {
    std::string out = "unit,x,y,label\n";
    for (const auto& c : communities.communities) {
        const std::string prefix = std::to_string(c.unit) + ',' + std::to_string(topology.column(c.unit)) + ',' +
                                   std::to_string(topology.row(c.unit)) + ',';
        for (const auto& m : c.members) out += prefix + m + '\n';
    }
    return out;
}

std::optional<std::size_t> FactionTable::find(std::string_view label) const {
    const auto it = faction_of.find(label);
    if (it == faction_of.end()) return std::nullopt;
    return it->second;
}

FactionTable parse_factions(std::string_view input) {
    FactionTable table;
    const auto lines = text::split_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        if (text::is_blank(lines[i]) || text::is_comment(lines[i])) continue;
        const auto fields = text::split(lines[i], '\t');
        if (fields.size() != 2) throw ParseError(lineno, "expected label<TAB>faction_id");
        const auto label = text::trim(fields[0]);
        if (label.empty()) throw ParseError(lineno, "empty label");
        const auto id = text::parse_integer(text::trim(fields[1]));
        if (!id) throw ParseError(lineno, "faction id is not an integer");
        if (*id <= 0) throw ParseError(lineno, "faction id must be positive");
        const auto [it, inserted] = table.faction_of.emplace(std::string(label), static_cast<std::size_t>(*id));
        if (!inserted) throw ParseError(lineno, "duplicate label '" + std::string(label) + "'");
        table.factions = std::max(table.factions, it->second);
    }
    if (table.faction_of.empty()) throw FormatError("faction table has no entries");
    return table;
}

std::string write_factions(const FactionTable& table) {
    std::string out;
    for (const auto& [label, id] : table.faction_of) out += label + '\t' + std::to_string(id) + '\n';
    return out;
}

std::vector<Rgb> default_palette(std::size_t factions) {
    std::vector<Rgb> palette{{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
    if (factions <= palette.size()) {
        palette.resize(factions);
        return palette;
    }
    palette.clear();
    for (std::size_t f = 0; f < factions; ++f) {
        // HSV with s = v = 1.
        const double h = 6.0 * static_cast<double>(f) / static_cast<double>(factions);
        const int sector = static_cast<int>(h);
        const auto rise = static_cast<std::uint8_t>(std::lround(255.0 * (h - sector)));
        const auto fall = static_cast<std::uint8_t>(255 - rise);
        switch (sector) {
            case 0: palette.push_back({255, rise, 0}); break;
            case 1: palette.push_back({fall, 255, 0}); break;
            case 2: palette.push_back({0, 255, rise}); break;
            case 3: palette.push_back({0, fall, 255}); break;
            case 4: palette.push_back({rise, 0, 255}); break;
            default: palette.push_back({255, 0, fall}); break;
        }
    }
    return palette;
}

ColorGrid overlay_factions(const Calibration& cal, const FactionTable& factions, const std::vector<Rgb>& palette,
                           const GridTopology& topology) {
    if (palette.size() < factions.factions) {
        throw std::invalid_argument("palette has " + std::to_string(palette.size()) + " colours for " +
                                    std::to_string(factions.factions) + " factions");
    }
    if (cal.per_unit.size() != topology.units()) throw std::invalid_argument("calibration does not match the map");
    ColorGrid grid{topology, std::vector<std::optional<Rgb>>(topology.units())};
    for (std::size_t u = 0; u < cal.per_unit.size(); ++u) {
        const auto& members = cal.per_unit[u];
        if (members.empty()) continue;
        std::array<std::uint64_t, 3> weighted{};
        for (const auto& label : members) {
            const auto f = factions.find(label);
            if (!f) throw DataError("label '" + label + "' has no faction");
            const Rgb& c = palette[*f - 1];
            weighted[0] += c.r;
            weighted[1] += c.g;
            weighted[2] += c.b;
        }
        // round(sum / n) with halves rounded up, in exact integer arithmetic.
        const std::uint64_t n = members.size();
        auto channel = [n](std::uint64_t sum) { return static_cast<std::uint8_t>((2 * sum + n) / (2 * n)); };
        grid.cells[u] = Rgb{channel(weighted[0]), channel(weighted[1]), channel(weighted[2])};
    }
    return grid;
}

FactionTable factions_kmeans(const DataSet& data, std::size_t k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k-means needs at least one cluster");
    if (k > data.size()) throw std::invalid_argument("k-means: more clusters than records");
    const std::size_t n = data.size();
    const std::size_t dim = data.dimension;

    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(order[i], order[i + rng.index(n - i)]);

    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    for (std::size_t i = 0; i < k; ++i) centers.push_back(data.records[order[i]].values);

    std::vector<std::size_t> assignment(n, 0);
    auto assign = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(data.records[i].values, centers[c]);
                if (d < best) {
                    best = d;
                    assignment[i] = c;
                }
            }
        }
    };

    constexpr int kMaxIterations = 100;
    constexpr double kTolerance = 1e-9;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        assign();
        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assignment[i]];
            for (std::size_t j = 0; j < dim; ++j) sums[assignment[i]][j] += data.records[i].values[j];
        }
        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centre
            for (double& s : sums[c]) s /= static_cast<double>(counts[c]);
            movement = std::max(movement, std::sqrt(squared_distance(sums[c], centers[c])));
            centers[c] = std::move(sums[c]);
        }
        if (movement < kTolerance) break;
    }
    assign();

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> id_of_cluster(k, none);
    std::size_t next_id = 1;
    FactionTable table;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t& id = id_of_cluster[assignment[i]];
        if (id == none) id = next_id++;
        table.faction_of[data.records[i].label] = id;
    }
    table.factions = next_id - 1;
    return table;
}

CentralityScores closeness(const LinkGraph& graph) {
    if (graph.empty()) throw std::invalid_argument("closeness: graph has no nodes");
    const std::size_t n = graph.node_count();
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& e : graph.edges()) {
        if (e.weight > 0 && e.source != e.target) out[e.source].push_back(e.target);
    }

    CentralityScores scores;
    std::vector<std::size_t> dist(n);
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        std::size_t reached = 0;
        std::size_t total = 0;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (const std::size_t w : out[v]) {
                if (dist[w] != unseen) continue;
                dist[w] = dist[v] + 1;
                ++reached;
                total += dist[w];
                queue.push_back(w);
            }
        }
        double score = 0.0;
        if (reached > 0) {
            const auto r = static_cast<double>(reached);
            score = (r / static_cast<double>(n - 1)) * (r / static_cast<double>(total));
        }
        scores[graph.label(s)] = score;
    }
    return scores;
}

std::string write_centrality_csv(const CentralityScores& scores, const std::vector<std::string>& order) {
    std::string out = "label,score\n";
    for (const auto& label : order) {
        const auto it = scores.find(label);
        if (it == scores.end()) continue;
        out += label + ',' + text::format_real(it->second) + '\n';
    }
    return out;
}

GrayGrid overlay_metric(const Calibration& cal, const CentralityScores& scores, const GridTopology& topology) {
    if (cal.per_unit.size() != topology.units()) throw std::invalid_argument("calibration does not match the map");
    GrayGrid grid{topology, std::vector<std::optional<double>>(topology.units())};
    for (std::size_t u = 0; u < cal.per_unit.size(); ++u) {
        const auto& members = cal.per_unit[u];
        if (members.empty()) continue;
        double sum = 0.0;
        for (const auto& label : members) {
            const auto it = scores.find(label);
            if (it == scores.end()) throw DataError("label '" + label + "' has no score");
            sum += it->second;
        }
        grid.cells[u] = sum / static_cast<double>(members.size());
    }
    return grid;
}

LinkProfile link_profile(const DataSet& data, const std::vector<std::string>& labels) {
    LinkProfile profile;
    profile.direction = data.direction;
    profile.components.reserve(data.size());
    for (const auto& r : data.records) profile.components.push_back(r.label);
    for (const auto& label : labels) {
        const auto it = std::find_if(data.records.begin(), data.records.end(),
                                     [&](const Record& r) { return r.label == label; });
        if (it == data.records.end()) throw DataError("unknown label '" + label + "'");
        Record row = *it;
        normalize_l1(row.values);
        profile.rows.push_back(std::move(row));
    }
    return profile;
}

}  // namespace linksom
