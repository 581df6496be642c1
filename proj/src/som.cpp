#include "linksom/som.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "linksom/error.hpp"

namespace linksom {

namespace {

constexpr double kHexRowHeight = 0.86602540378443864676;  // sqrt(3) / 2

// Grid distances of exactly 1 come out a few ulps off on the hex lattice.
constexpr double kRadiusSlack = 1e-9;

void check_records(const DataSet& data) {
    if (data.empty()) throw std::invalid_argument("data set is empty");
    if (data.dimension == 0) throw std::invalid_argument("data set has dimension 0");
    for (const auto& r : data.records) {
        if (r.values.size() != data.dimension) {
            throw DataError("record '" + r.label + "' has " + std::to_string(r.values.size()) +
                            " components, expected " + std::to_string(data.dimension));
        }
    }
}

void check_dimensions(const SomMap& map, const DataSet& data) {
    check_records(data);
    if (map.dimension() != data.dimension) {
        throw DataError("map dimension " + std::to_string(map.dimension()) + " does not match data dimension " +
                        std::to_string(data.dimension));
    }
}

// Units x units table of grid distances.
std::vector<double> distance_table(const GridTopology& topology) {
    const std::size_t n = topology.units();
    std::vector<double> table(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = grid_distance(topology, a, b);
    }
    return table;
}

std::size_t apply_update(SomMap& map, std::span<const double> input, std::span<const double> distances,
                         double alpha, double radius, Neighborhood kernel) {
    const std::size_t dim = map.dimension();
    std::size_t touched = 0;
    for (std::size_t u = 0; u < map.units(); ++u) {
        double factor = 0.0;
        if (kernel == Neighborhood::Bubble) {
            if (distances[u] > radius + kRadiusSlack) continue;
            factor = alpha;
        } else {
            const double d = distances[u];
            factor = alpha * std::exp(-(d * d) / (2.0 * radius * radius));
        }
        double* v = map.unit(u).data();
        const double* x = input.data();
        for (std::size_t k = 0; k < dim; ++k) v[k] += factor * (x[k] - v[k]);
        ++touched;
    }
    return touched;
}

SomMap train_impl(const SomConfig& config, const DataSet& data, std::uint64_t seed, const StepObserver& observer,
                  std::size_t& steps) {
    config.validate();
    check_records(data);
    Rng rng(seed);
    SomMap map = init_map(config.topology, data, rng);
    map.set_neighborhood(config.phase2.neighborhood);
    const auto table = distance_table(config.topology);
    const std::size_t units = config.topology.units();

    const PhaseParams* phases[] = {&config.phase1, &config.phase2};
    for (int p = 0; p < 2; ++p) {
        const PhaseParams& phase = *phases[p];
        for (std::size_t t = 0; t < phase.length; ++t) {
            const std::size_t record = rng.index(data.size());
            const std::span<const double> input = data.records[record].values;
            const BestMatch winner = find_bmu(map, input);
            const double alpha = learning_rate(phase, t);
            const double radius = neighborhood_radius(phase, t);
            const std::span<const double> distances(table.data() + winner.unit * units, units);
            const std::size_t touched = apply_update(map, input, distances, alpha, radius, phase.neighborhood);
            ++steps;
            if (observer) observer({p + 1, t, alpha, radius, record, winner, touched});
        }
    }
    return map;
}

}  // namespace

std::string_view to_string(Lattice l) { return l == Lattice::Hexagonal ? "hexa" : "rect"; }

std::string_view to_string(Neighborhood n) { return n == Neighborhood::Bubble ? "bubble" : "gaussian"; }

Lattice parse_lattice(std::string_view s) {
    if (s == "hexa" || s == "hex" || s == "hexagonal") return Lattice::Hexagonal;
    if (s == "rect" || s == "rectangular") return Lattice::Rectangular;
    throw std::invalid_argument("unknown lattice '" + std::string(s) + "'");
}

Neighborhood parse_neighborhood(std::string_view s) {
    if (s == "bubble") return Neighborhood::Bubble;
    if (s == "gaussian") return Neighborhood::Gaussian;
    throw std::invalid_argument("unknown neighborhood '" + std::string(s) + "'");
}

void GridTopology::validate() const {
    if (xsize == 0 || ysize == 0) throw std::invalid_argument("map sizes must be positive");
}

GridPoint grid_position(const GridTopology& topology, std::size_t unit) {
    if (unit >= topology.units()) {
        throw std::out_of_range("unit " + std::to_string(unit) + " outside a " + std::to_string(topology.xsize) +
                                "x" + std::to_string(topology.ysize) + " map");
    }
    const auto col = static_cast<double>(topology.column(unit));
    const std::size_t row = topology.row(unit);
    if (topology.lattice == Lattice::Rectangular) return {col, static_cast<double>(row)};
    return {row % 2 == 1 ? col + 0.5 : col, static_cast<double>(row) * kHexRowHeight};
}

double grid_distance(const GridTopology& topology, std::size_t a, std::size_t b) {
    const GridPoint pa = grid_position(topology, a);
    const GridPoint pb = grid_position(topology, b);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

std::vector<std::size_t> lattice_neighbors(const GridTopology& topology, std::size_t unit) {
    if (unit >= topology.units()) throw std::out_of_range("unit outside the map");
    const auto col = static_cast<long long>(topology.column(unit));
    const auto row = static_cast<long long>(topology.row(unit));
    const auto xs = static_cast<long long>(topology.xsize);
    const auto ys = static_cast<long long>(topology.ysize);
    std::vector<std::size_t> out;
    auto add = [&](long long c, long long r) {
        if (c >= 0 && c < xs && r >= 0 && r < ys) out.push_back(static_cast<std::size_t>(r * xs + c));
    };
    if (topology.lattice == Lattice::Rectangular) {
        add(col, row - 1);
        add(col - 1, row);
        add(col + 1, row);
        add(col, row + 1);
    } else {
        // Even rows reach the row above/below at columns c-1 and c, odd rows at c and c+1.
        const long long shift = row % 2 == 0 ? -1 : 0;
        add(col + shift, row - 1);
        add(col + shift + 1, row - 1);
        add(col - 1, row);
        add(col + 1, row);
        add(col + shift, row + 1);
        add(col + shift + 1, row + 1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void PhaseParams::validate() const {
    if (length < 1) throw std::invalid_argument("training length must be at least 1");
    if (!(radius0 >= 1.0) || !std::isfinite(radius0)) throw std::invalid_argument("initial radius must be >= 1");
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw std::invalid_argument("training constant must be in (0, 1]");
}

double learning_rate(const PhaseParams& phase, std::size_t t) {
    const double remaining = 1.0 - static_cast<double>(t) / static_cast<double>(phase.length);
    return phase.alpha0 * remaining;
}

double neighborhood_radius(const PhaseParams& phase, std::size_t t) {
    const double remaining = 1.0 - static_cast<double>(t) / static_cast<double>(phase.length);
    return 1.0 + (phase.radius0 - 1.0) * remaining;
}

void SomConfig::validate() const {
    topology.validate();
    phase1.validate();
    phase2.validate();
    if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
}

SomMap::SomMap(GridTopology topology, std::size_t dimension, Neighborhood neighborhood)
    : SomMap(topology, dimension, std::vector<double>(topology.units() * dimension, 0.0), neighborhood) {}

SomMap::SomMap(GridTopology topology, std::size_t dimension, std::vector<double> codebook,
               Neighborhood neighborhood)
    : topology_(topology), dimension_(dimension), codebook_(std::move(codebook)), neighborhood_(neighborhood) {
    topology_.validate();
    if (dimension_ == 0) throw std::invalid_argument("map dimension must be positive");
    if (codebook_.size() != topology_.units() * dimension_) {
        throw std::invalid_argument("codebook holds " + std::to_string(codebook_.size()) + " values, expected " +
                                    std::to_string(topology_.units() * dimension_));
    }
}

SomMap init_map(const GridTopology& topology, const DataSet& data, Rng& rng) {
    check_records(data);
    const std::size_t dim = data.dimension;
    std::vector<double> lo(data.records.front().values);
    std::vector<double> hi(lo);
    for (const auto& r : data.records) {
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], r.values[k]);
            hi[k] = std::max(hi[k], r.values[k]);
        }
    }
    SomMap map(topology, dim);
    for (std::size_t u = 0; u < map.units(); ++u) {
        auto v = map.unit(u);
        for (std::size_t k = 0; k < dim; ++k) v[k] = lo[k] + rng.uniform() * (hi[k] - lo[k]);
    }
    return map;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

BestMatch find_bmu(const SomMap& map, std::span<const double> input) {
    if (input.size() != map.dimension()) {
        throw DataError("input has " + std::to_string(input.size()) + " components, map has " +
                        std::to_string(map.dimension()));
    }
    const std::size_t dim = map.dimension();
    const double* x = input.data();
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < map.units(); ++u) {
        const double* v = map.unit(u).data();
        double sum = 0.0;
        std::size_t k = 0;
        // Partial sums only grow, so a unit can be abandoned once it reaches
        // the current best; an equal total would lose the tie anyway.
        for (; k < dim; ++k) {
            const double d = x[k] - v[k];
            sum += d * d;
            if (sum >= best_sq) break;
        }
        if (k == dim && sum < best_sq) {
            best_sq = sum;
            best = u;
        }
    }
    return {best, std::sqrt(best_sq)};
}

std::size_t update_neighborhood(SomMap& map, std::span<const double> input, std::size_t winner, double alpha,
                                double radius, Neighborhood kernel) {
    if (input.size() != map.dimension()) throw DataError("input dimension does not match the map");
    if (winner >= map.units()) throw std::out_of_range("winner outside the map");
    std::vector<double> distances(map.units());
    for (std::size_t u = 0; u < map.units(); ++u) distances[u] = grid_distance(map.topology(), winner, u);
    return apply_update(map, input, distances, alpha, radius, kernel);
}

BestMatch train_step(SomMap& map, std::span<const double> input, std::size_t t, const PhaseParams& phase) {
    if (t >= phase.length) throw std::invalid_argument("train_step: t must be below the phase length");
    const BestMatch winner = find_bmu(map, input);
    update_neighborhood(map, input, winner.unit, learning_rate(phase, t), neighborhood_radius(phase, t),
                        phase.neighborhood);
    return winner;
}

SomMap train(const SomConfig& config, const DataSet& data, std::uint64_t seed, const StepObserver& observer) {
    std::size_t steps = 0;
    return train_impl(config, data, seed, observer, steps);
}

double quantization_error(const SomMap& map, const DataSet& data) {
    check_dimensions(map, data);
    double sum = 0.0;
    for (const auto& r : data.records) {
        const BestMatch m = find_bmu(map, r.values);
        sum += squared_distance(r.values, map.unit(m.unit));
    }
    return sum / static_cast<double>(data.size());
}

RestartResult multi_restart(const SomConfig& config, const DataSet& data) {
    config.validate();
    check_records(data);
    const std::size_t runs = config.restarts;
    std::vector<SomMap> maps(runs);
    std::vector<double> errors(runs);
    std::vector<std::size_t> steps(runs, 0);

    std::size_t workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, runs);

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](std::size_t worker) {
        try {
            for (std::size_t i = next++; i < runs; i = next++) {
                maps[i] = train_impl(config, data, config.seed + i, {}, steps[i]);
                errors[i] = quantization_error(maps[i], data);
            }
        } catch (...) {
            failures[worker] = std::current_exception();
            next = runs;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < runs; ++i) {
        if (errors[i] < errors[best]) best = i;
    }
    return {std::move(maps[best]), best, std::move(errors), std::move(steps)};
}

std::size_t Calibration::unit_of_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return unit_of[i];
    }
    throw DataError("label '" + std::string(label) + "' is not calibrated");
}

Calibration calibrate(const SomMap& map, const DataSet& data) {
    check_dimensions(map, data);
    Calibration cal;
    cal.units = map.units();
    cal.per_unit.resize(map.units());
    cal.unit_of.reserve(data.size());
    cal.labels.reserve(data.size());
    for (const auto& r : data.records) {
        const std::size_t u = find_bmu(map, r.values).unit;
        cal.unit_of.push_back(u);
        cal.labels.push_back(r.label);
        cal.per_unit[u].push_back(r.label);
    }
    return cal;
}

}  // namespace linksom
