#include "linksom/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "linksom/analysis.hpp"
#include "linksom/error.hpp"
#include "linksom/linkgraph.hpp"
#include "linksom/render.hpp"
#include "linksom/som.hpp"
#include "linksom/umatrix.hpp"
#include "text.hpp"

#ifndef LINKSOM_VERSION
#define LINKSOM_VERSION "dev"
#endif

namespace linksom::cli {

namespace {

/// Bad flag values detected after CLI11 parsing.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw Error("failed writing '" + path + "'");
}

/// Flat key=value run record written next to every output.
class Manifest {
public:
    Manifest(std::string command, std::string output) {
        add("tool", "linksom");
        add("tool_version", LINKSOM_VERSION);
        add("command", std::move(command));
        add("output", std::move(output));
    }

    void add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, double value) { add(std::move(key), text::format_real(value)); }
    void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }

    void write(const std::string& output_path) const {
        std::string body;
        for (const auto& [k, v] : entries_) body += k + '=' + v + '\n';
        write_file(output_path + ".manifest", body);
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

template <typename Parse>
auto parse_input(const std::string& path, Parse parse) {
    const std::string content = read_file(path);
    try {
        return parse(content);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

ImageFormat output_format(const std::string& path, std::initializer_list<ImageFormat> allowed) {
    const auto format = format_from_path(path);
    for (const auto f : allowed) {
        if (format == f) return f;
    }
    throw UsageError("unsupported output extension for '" + path + "'");
}

bool is_csv(const std::string& path) { return path.size() >= 4 && path.substr(path.size() - 4) == ".csv"; }

std::vector<Rgb> parse_palette(const std::string& spec) {
    std::vector<Rgb> palette;
    for (const auto entry : text::split(spec, ';')) {
        const auto parts = text::split(text::trim(entry), ',');
        if (parts.size() != 3) throw UsageError("palette entries are r,g,b separated by ';'");
        std::array<std::uint8_t, 3> c{};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto v = text::parse_integer(text::trim(parts[i]));
            if (!v || *v < 0 || *v > 255) throw UsageError("palette channel out of range 0-255");
            c[i] = static_cast<std::uint8_t>(*v);
        }
        palette.push_back({c[0], c[1], c[2]});
    }
    return palette;
}

void add_data_metadata(Manifest& m, const DataSet& data) {
    m.add("direction", std::string(to_string(data.direction)));
    m.add("normalization", std::string(to_string(data.normalization)));
    m.add("dimension", data.dimension);
    m.add("records", data.size());
}

void add_map_metadata(Manifest& m, const SomMap& map) {
    m.add("lattice", std::string(to_string(map.topology().lattice)));
    m.add("xsize", map.topology().xsize);
    m.add("ysize", map.topology().ysize);
}

SomMap read_map(const std::string& path) { return parse_input(path, parse_cod); }
DataSet read_data(const std::string& path) { return parse_input(path, parse_sompak_dat); }

void check_same_dimension(const SomMap& map, const DataSet& data) {
    if (map.dimension() != data.dimension) {
        throw DataError("map dimension " + std::to_string(map.dimension()) + " differs from data dimension " +
                        std::to_string(data.dimension));
    }
}

struct IngestArgs {
    std::string edges, out, direction = "outgoing", normalization = "raw";
};

void cmd_ingest(const IngestArgs& a, std::ostream& out) {
    const LinkGraph graph = parse_input(a.edges, parse_edge_list);
    const DataSet data = extract_vectors(graph, parse_direction(a.direction), parse_normalization(a.normalization));
    write_file(a.out, write_sompak_dat(data));
    Manifest m("ingest", a.out);
    m.add("input_edges", a.edges);
    add_data_metadata(m, data);
    m.add("edges", graph.edges().size());
    m.add("total_links", static_cast<std::size_t>(graph.total_weight()));
    m.write(a.out);
    out << "ingested " << graph.node_count() << " nodes, " << graph.edges().size() << " edges -> " << a.out << '\n';
}

struct TrainArgs {
    std::string data, out;
    SomConfig config;
    std::string lattice = "hexa", neigh = "bubble";
};

void cmd_train(TrainArgs a, std::ostream& out) {
    SomConfig& cfg = a.config;
    cfg.topology.lattice = parse_lattice(a.lattice);
    cfg.phase1.neighborhood = parse_neighborhood(a.neigh);
    cfg.phase2.neighborhood = cfg.phase1.neighborhood;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const DataSet data = read_data(a.data);
    if (data.empty()) throw DataError(a.data + ": no records");

    const RestartResult result = multi_restart(cfg, data);
    write_file(a.out, write_cod(result.best));

    for (std::size_t i = 0; i < result.errors.size(); ++i) {
        out << "run " << i << " seed " << cfg.seed + i << " steps " << result.steps[i] << " qerror "
            << text::format_real(result.errors[i]) << (i == result.best_index ? " *" : "") << '\n';
    }

    Manifest m("train", a.out);
    m.add("input_data", a.data);
    add_data_metadata(m, data);
    m.add("lattice", std::string(to_string(cfg.topology.lattice)));
    m.add("xsize", cfg.topology.xsize);
    m.add("ysize", cfg.topology.ysize);
    m.add("neighborhood", std::string(to_string(cfg.phase1.neighborhood)));
    m.add("length1", cfg.phase1.length);
    m.add("radius1", cfg.phase1.radius0);
    m.add("alpha1", cfg.phase1.alpha0);
    m.add("length2", cfg.phase2.length);
    m.add("radius2", cfg.phase2.radius0);
    m.add("alpha2", cfg.phase2.alpha0);
    m.add("restarts", cfg.restarts);
    m.add("seed", std::to_string(cfg.seed));
    m.add("best_seed", std::to_string(cfg.seed + result.best_index));
    m.add("best_qerror", result.errors[result.best_index]);
    m.write(a.out);
}

struct UMatrixArgs {
    std::string cod, out, threshold = "auto", regions;
    std::size_t cell_px = 24;
};

void cmd_umatrix(const UMatrixArgs& a, std::ostream& out) {
    std::optional<double> threshold;
    if (a.threshold != "auto") {
        threshold = text::parse_real(a.threshold);
        if (!threshold) throw UsageError("--threshold must be a number or 'auto'");
    }
    const SomMap map = read_map(a.cod);
    const UMatrixGrid grid = compute_umatrix(map);
    if (is_csv(a.out)) {
        write_file(a.out, write_umatrix_csv(grid));
    } else {
        const ImageSpec spec{a.cell_px, output_format(a.out, {ImageFormat::PGM, ImageFormat::SVG})};
        write_file(a.out, render_gray(to_raster(grid), spec, GrayScale::Inverted));
    }
    const RegionLabeling regions = segment_regions(grid, threshold);
    if (!a.regions.empty()) {
        std::string csv = "unit,x,y,region\n";
        for (std::size_t u = 0; u < map.units(); ++u) {
            csv += std::to_string(u) + ',' + std::to_string(map.topology().column(u)) + ',' +
                   std::to_string(map.topology().row(u)) + ',' + std::to_string(regions.region_of[u]) + '\n';
        }
        write_file(a.regions, csv);
    }
    Manifest m("umatrix", a.out);
    m.add("input_map", a.cod);
    add_map_metadata(m, map);
    m.add("threshold", regions.threshold);
    m.add("regions", regions.regions.size());
    if (!a.regions.empty()) m.add("regions_output", a.regions);
    m.write(a.out);
    out << regions.regions.size() << " regions at threshold " << text::format_real(regions.threshold) << '\n';
}

struct CommunitiesArgs {
    std::string cod, data, out;
};

void cmd_communities(const CommunitiesArgs& a, std::ostream& out) {
    const SomMap map = read_map(a.cod);
    const DataSet data = read_data(a.data);
    check_same_dimension(map, data);
    const CommunityAssignment communities = communities_from_calibration(calibrate(map, data));
    write_file(a.out, write_communities_csv(communities, map.topology()));
    Manifest m("communities", a.out);
    m.add("input_map", a.cod);
    m.add("input_data", a.data);
    add_data_metadata(m, data);
    add_map_metadata(m, map);
    m.add("communities", communities.communities.size());
    m.add("empty_units", communities.unassigned_units.size());
    m.write(a.out);
    out << communities.communities.size() << " communities, " << communities.unassigned_units.size()
        << " empty units\n";
}

struct OverlayArgs {
    std::string cod, data, out, factions, closeness_edges, palette, scores;
    std::size_t kmeans = 0;
    std::uint64_t kmeans_seed = 1;
    std::size_t cell_px = 24;
};

void cmd_overlay(const OverlayArgs& a, std::ostream& out) {
    const int sources = !a.factions.empty() + !a.closeness_edges.empty() + (a.kmeans != 0);
    if (sources != 1) throw UsageError("give exactly one of --factions, --closeness or --kmeans");

    const SomMap map = read_map(a.cod);
    const DataSet data = read_data(a.data);
    check_same_dimension(map, data);
    const Calibration cal = calibrate(map, data);
    Manifest m("overlay", a.out);
    m.add("input_map", a.cod);
    m.add("input_data", a.data);
    add_data_metadata(m, data);
    add_map_metadata(m, map);

    if (!a.closeness_edges.empty()) {
        const ImageSpec spec{a.cell_px, output_format(a.out, {ImageFormat::PGM, ImageFormat::SVG})};
        const LinkGraph graph = parse_input(a.closeness_edges, parse_edge_list);
        const CentralityScores scores = closeness(graph);
        const GrayRaster raster = to_raster(overlay_metric(cal, scores, map.topology()));
        write_file(a.out, render_gray(raster, spec, GrayScale::Direct));
        write_file(a.out + ".txt", gray_report(raster));
        if (!a.scores.empty()) write_file(a.scores, write_centrality_csv(scores, graph.labels()));
        m.add("overlay", "closeness");
        m.add("input_edges", a.closeness_edges);
        m.add("report", a.out + ".txt");
        m.write(a.out);
        out << "closeness overlay -> " << a.out << '\n';
        return;
    }

    const ImageSpec spec{a.cell_px, output_format(a.out, {ImageFormat::PPM, ImageFormat::SVG})};
    FactionTable table;
    if (!a.factions.empty()) {
        table = parse_input(a.factions, parse_factions);
        m.add("overlay", "factions");
        m.add("input_factions", a.factions);
    } else {
        table = factions_kmeans(data, a.kmeans, a.kmeans_seed);
        m.add("overlay", "kmeans");
        m.add("kmeans_k", a.kmeans);
        m.add("kmeans_seed", std::to_string(a.kmeans_seed));
    }
    const std::vector<Rgb> palette = a.palette.empty() ? default_palette(table.factions) : parse_palette(a.palette);
    if (palette.size() < table.factions) throw UsageError("palette has fewer colours than factions");
    write_file(a.out, render_color(overlay_factions(cal, table, palette, map.topology()), spec));
    m.add("factions", table.factions);
    m.write(a.out);
    out << table.factions << "-faction overlay -> " << a.out << '\n';
}

struct ProfileArgs {
    std::string data, out, labels, cod;
    long long unit = -1;
    std::size_t cell_px = 24;
};

void cmd_profile(const ProfileArgs& a, std::ostream& out) {
    const DataSet data = read_data(a.data);
    std::vector<std::string> labels;
    if (!a.labels.empty()) {
        for (const auto l : text::split(a.labels, ',')) {
            if (!text::trim(l).empty()) labels.emplace_back(text::trim(l));
        }
    }
    if (a.unit >= 0) {
        if (a.cod.empty()) throw UsageError("--unit needs --cod");
        const SomMap map = read_map(a.cod);
        check_same_dimension(map, data);
        const Calibration cal = calibrate(map, data);
        if (static_cast<std::size_t>(a.unit) >= cal.per_unit.size()) throw UsageError("--unit outside the map");
        for (const auto& l : cal.per_unit[static_cast<std::size_t>(a.unit)]) labels.push_back(l);
    }
    if (labels.empty()) throw UsageError("no labels selected (use --labels or --unit)");
    const LinkProfile profile = link_profile(data, labels);
    write_file(a.out, render_profile(profile, {a.cell_px, ImageFormat::SVG}));
    Manifest m("profile", a.out);
    m.add("input_data", a.data);
    add_data_metadata(m, data);
    std::string joined;
    for (const auto& l : labels) joined += (joined.empty() ? "" : ",") + l;
    m.add("labels", joined);
    m.write(a.out);
    out << profile.rows.size() << " profiles -> " << a.out << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Community maps of link networks with Kohonen self-organizing maps", "linksom"};
    app.require_subcommand(1);
    app.set_version_flag("--version", LINKSOM_VERSION);

    IngestArgs ingest;
    auto* c_ingest = app.add_subcommand("ingest", "Edge list -> SOM_PAK data file of per-node link vectors");
    c_ingest->add_option("edges", ingest.edges, "Edge list (source<TAB>target<TAB>count)")->required();
    c_ingest->add_option("out", ingest.out, "Output .dat file")->required();
    c_ingest->add_option("--direction", ingest.direction, "outgoing (rows) or incoming (columns)")
        ->check(CLI::IsMember({"outgoing", "incoming"}))
        ->capture_default_str();
    c_ingest->add_option("--normalization", ingest.normalization, "raw counts or relative_l1")
        ->check(CLI::IsMember({"raw", "relative_l1"}))
        ->capture_default_str();

    TrainArgs train_args;
    SomConfig& cfg = train_args.config;
    auto* c_train = app.add_subcommand("train", "Train a map (best of --restarts runs) and write a .cod file");
    c_train->add_option("data", train_args.data, "Input .dat file")->required();
    c_train->add_option("out", train_args.out, "Output .cod file")->required();
    c_train->add_option("--x", cfg.topology.xsize, "Map x size")->capture_default_str();
    c_train->add_option("--y", cfg.topology.ysize, "Map y size")->capture_default_str();
    c_train->add_option("--lattice", train_args.lattice, "hexa or rect")
        ->check(CLI::IsMember({"hexa", "rect"}))
        ->capture_default_str();
    c_train->add_option("--neigh", train_args.neigh, "bubble or gaussian")
        ->check(CLI::IsMember({"bubble", "gaussian"}))
        ->capture_default_str();
    c_train->add_option("--len1", cfg.phase1.length, "First training period: length")->capture_default_str();
    c_train->add_option("--rad1", cfg.phase1.radius0, "First training period: neighborhood radius")
        ->capture_default_str();
    c_train->add_option("--alpha1", cfg.phase1.alpha0, "First training period: training constant")
        ->capture_default_str();
    c_train->add_option("--len2", cfg.phase2.length, "Second training period: length")->capture_default_str();
    c_train->add_option("--rad2", cfg.phase2.radius0, "Second training period: neighborhood radius")
        ->capture_default_str();
    c_train->add_option("--alpha2", cfg.phase2.alpha0, "Second training period: training constant")
        ->capture_default_str();
    c_train->add_option("--restarts", cfg.restarts, "Independent runs; the lowest quantization error wins")
        ->capture_default_str();
    c_train->add_option("--seed", cfg.seed, "Seed of the first run (run i uses seed + i)")->capture_default_str();
    c_train->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

    UMatrixArgs umat;
    auto* c_umat = app.add_subcommand("umatrix", "U-Matrix of a trained map as PGM/SVG image or CSV");
    c_umat->add_option("cod", umat.cod, "Input .cod file")->required();
    c_umat->add_option("out", umat.out, "Output .pgm, .svg or .csv")->required();
    c_umat->add_option("--threshold", umat.threshold, "Region threshold, or 'auto' for the median link distance")
        ->capture_default_str();
    c_umat->add_option("--regions", umat.regions, "Also write unit,x,y,region CSV here");
    c_umat->add_option("--cell-px", umat.cell_px, "Pixels per raster cell")->capture_default_str();

    CommunitiesArgs comm;
    auto* c_comm = app.add_subcommand("communities", "Nodes sharing a map unit, as unit,x,y,label CSV");
    c_comm->add_option("cod", comm.cod, "Input .cod file")->required();
    c_comm->add_option("data", comm.data, "Input .dat file")->required();
    c_comm->add_option("out", comm.out, "Output CSV")->required();

    OverlayArgs over;
    auto* c_over = app.add_subcommand("overlay", "Faction colours or closeness gray levels on the map");
    c_over->add_option("cod", over.cod, "Input .cod file")->required();
    c_over->add_option("data", over.data, "Input .dat file")->required();
    c_over->add_option("out", over.out, "Output image (.ppm/.svg for factions, .pgm/.svg for closeness)")
        ->required();
    c_over->add_option("--factions", over.factions, "Faction table (label<TAB>id)");
    c_over->add_option("--closeness", over.closeness_edges, "Edge list to compute closeness centrality from");
    c_over->add_option("--kmeans", over.kmeans, "Baseline: split records into K factions with k-means");
    c_over->add_option("--kmeans-seed", over.kmeans_seed, "Seed for --kmeans")->capture_default_str();
    c_over->add_option("--palette", over.palette, "Faction colours 'r,g,b;r,g,b;...' (default red;green;blue)");
    c_over->add_option("--scores", over.scores, "Also write label,score CSV (with --closeness)");
    c_over->add_option("--cell-px", over.cell_px, "Pixels per unit")->capture_default_str();

    ProfileArgs prof;
    auto* c_prof = app.add_subcommand("profile", "Relative link strength bar chart (SVG) for selected nodes");
    c_prof->add_option("data", prof.data, "Input .dat file")->required();
    c_prof->add_option("out", prof.out, "Output .svg")->required();
    c_prof->add_option("--labels", prof.labels, "Comma-separated node labels");
    c_prof->add_option("--unit", prof.unit, "Select every node calibrated to this unit (needs --cod)");
    c_prof->add_option("--cod", prof.cod, "Trained map, for --unit");
    c_prof->add_option("--cell-px", prof.cell_px, "Bar chart scale")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();  // program name
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help / --version
            return app.exit(e, out, err) == 0 ? kOk : kUsage;
        }
        err << "linksom: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (c_ingest->parsed()) cmd_ingest(ingest, out);
        if (c_train->parsed()) cmd_train(train_args, out);
        if (c_umat->parsed()) cmd_umatrix(umat, out);
        if (c_comm->parsed()) cmd_communities(comm, out);
        if (c_over->parsed()) cmd_overlay(over, out);
        if (c_prof->parsed()) cmd_profile(prof, out);
    } catch (const UsageError& e) {
        err << "linksom: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "linksom: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "linksom: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "linksom: internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace linksom::cli
