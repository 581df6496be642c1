#ifndef LINKSOM_SOM_HPP
#define LINKSOM_SOM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linksom/linkgraph.hpp"
#include "linksom/rng.hpp"

namespace linksom {

enum class Lattice { Hexagonal, Rectangular };
enum class Neighborhood { Bubble, Gaussian };

/// SOM_PAK spellings: "hexa"/"rect" and "bubble"/"gaussian".
std::string_view to_string(Lattice l);
std::string_view to_string(Neighborhood n);
Lattice parse_lattice(std::string_view s);
Neighborhood parse_neighborhood(std::string_view s);

struct GridPoint {
    double x;
    double y;
};

/// Map grid. Unit u sits at column u % xsize, row u / xsize. On a hexagonal
/// lattice odd rows are shifted right by half a unit and rows are sqrt(3)/2
/// apart, so all six neighbours are at distance 1.
struct GridTopology {
    std::size_t xsize = 9;
    std::size_t ysize = 7;
    Lattice lattice = Lattice::Hexagonal;

    std::size_t units() const noexcept { return xsize * ysize; }
    std::size_t column(std::size_t unit) const noexcept { return unit % xsize; }
    std::size_t row(std::size_t unit) const noexcept { return unit / xsize; }
    std::size_t unit_at(std::size_t col, std::size_t row) const noexcept { return row * xsize + col; }

    void validate() const;

    friend bool operator==(const GridTopology&, const GridTopology&) = default;
};

/// Throws std::out_of_range for a unit outside the grid.
GridPoint grid_position(const GridTopology& topology, std::size_t unit);
double grid_distance(const GridTopology& topology, std::size_t a, std::size_t b);

/// Lattice neighbours of a unit (up to 6 on hex, 4 on rect), ascending.
std::vector<std::size_t> lattice_neighbors(const GridTopology& topology, std::size_t unit);

/// One training period.
struct PhaseParams {
    std::size_t length = 1;
    double radius0 = 1.0;
    double alpha0 = 0.1;
    Neighborhood neighborhood = Neighborhood::Bubble;

    void validate() const;

    friend bool operator==(const PhaseParams&, const PhaseParams&) = default;
};

/// Learning rate at step t of a phase: alpha0 * (1 - t / length).
double learning_rate(const PhaseParams& phase, std::size_t t);

/// Neighbourhood radius at step t: 1 + (radius0 - 1) * (1 - t / length).
/// The radius never drops below 1, so the winner's lattice neighbours stay
/// inside the bubble for the whole period.
double neighborhood_radius(const PhaseParams& phase, std::size_t t);

/// Defaults are the classic two-period schedule: 9x7 hexagonal bubble map,
/// a 2000-step ordering period (radius 9, alpha 0.1), a 10000-step
/// fine-tuning period (radius 1, alpha 0.02), best of 30 restarts.
struct SomConfig {
    GridTopology topology{};
    PhaseParams phase1{2000, 9.0, 0.1, Neighborhood::Bubble};
    PhaseParams phase2{10000, 1.0, 0.02, Neighborhood::Bubble};
    std::size_t restarts = 30;
    std::uint64_t seed = 1;
    /// Worker threads for multi_restart; 0 picks hardware concurrency.
    std::size_t threads = 0;

    void validate() const;
};

/// Trained model: one codebook vector per unit, stored unit-major.
class SomMap {
public:
    SomMap() = default;
    SomMap(GridTopology topology, std::size_t dimension,
           Neighborhood neighborhood = Neighborhood::Bubble);
    SomMap(GridTopology topology, std::size_t dimension, std::vector<double> codebook,
           Neighborhood neighborhood = Neighborhood::Bubble);

    const GridTopology& topology() const noexcept { return topology_; }
    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t units() const noexcept { return topology_.units(); }
    /// Kernel the map was trained with; recorded in the .cod header.
    Neighborhood neighborhood() const noexcept { return neighborhood_; }
    void set_neighborhood(Neighborhood n) noexcept { neighborhood_ = n; }

    std::span<const double> unit(std::size_t u) const {
        return {codebook_.data() + u * dimension_, dimension_};
    }
    std::span<double> unit(std::size_t u) { return {codebook_.data() + u * dimension_, dimension_}; }

    const std::vector<double>& codebook() const noexcept { return codebook_; }

    friend bool operator==(const SomMap&, const SomMap&) = default;

private:
    GridTopology topology_{};
    std::size_t dimension_ = 0;
    std::vector<double> codebook_;
    Neighborhood neighborhood_ = Neighborhood::Bubble;
};

/// Each codebook component k is drawn uniformly from the range of component
/// k over the data set. Consumes units * dimension draws, unit-major.
SomMap init_map(const GridTopology& topology, const DataSet& data, Rng& rng);

struct BestMatch {
    std::size_t unit;
    /// Euclidean distance, not squared.
    double distance;
};

/// Nearest codebook vector; ties go to the lowest unit index.
BestMatch find_bmu(const SomMap& map, std::span<const double> input);

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Moves every unit within `radius` (grid distance) of `winner` toward
/// `input`. Bubble applies `alpha` uniformly inside the radius; Gaussian
/// applies alpha * exp(-d^2 / (2 radius^2)) to every unit. Returns the number
/// of units touched.
std::size_t update_neighborhood(SomMap& map, std::span<const double> input, std::size_t winner, double alpha,
                                double radius, Neighborhood kernel);

/// One online step at time t of `phase`: find the winner, apply the decayed
/// alpha and radius. Requires t < phase.length.
BestMatch train_step(SomMap& map, std::span<const double> input, std::size_t t, const PhaseParams& phase);

struct StepEvent {
    int phase;  // 1 or 2
    std::size_t step;
    double alpha;
    double radius;
    std::size_t record;
    BestMatch winner;
    std::size_t updated_units;
};

using StepObserver = std::function<void(const StepEvent&)>;

/// Initializes from `seed`, then runs phase1 and phase2, drawing one record
/// uniformly at random per step from the same generator.
SomMap train(const SomConfig& config, const DataSet& data, std::uint64_t seed,
             const StepObserver& observer = {});

/// Mean over records of the squared distance to the winning unit.
double quantization_error(const SomMap& map, const DataSet& data);

struct RestartResult {
    SomMap best;
    std::size_t best_index = 0;
    /// Quantization error of run i, trained with seed config.seed + i.
    std::vector<double> errors;
    /// Training steps performed by run i (both phases).
    std::vector<std::size_t> steps;
};

/// Trains config.restarts maps with consecutive seeds and keeps the one with
/// the lowest quantization error (earliest seed on ties). Runs execute on a
/// thread pool; results are merged in seed order.
RestartResult multi_restart(const SomConfig& config, const DataSet& data);

/// Records assigned to their best-matching units.
struct Calibration {
    std::size_t units = 0;
    /// unit_of[i] is the winner of record i.
    std::vector<std::size_t> unit_of;
    std::vector<std::string> labels;
    /// Labels per unit in data-set order; empty units have empty lists.
    std::vector<std::vector<std::string>> per_unit;

    /// Unit of the first record carrying `label`; throws DataError if none.
    std::size_t unit_of_label(std::string_view label) const;
};

Calibration calibrate(const SomMap& map, const DataSet& data);

/// SOM_PAK codebook file: `dim lattice xsize ysize neighborhood` header,
/// then one vector per line in unit order.
std::string write_cod(const SomMap& map);
SomMap parse_cod(std::string_view text);

}  // namespace linksom

#endif
