#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "coevo/core.hpp"
#include "coevo/dynamics.hpp"

namespace coevo {

struct SweepSpec {
    std::vector<std::size_t> n_values;
    std::vector<double> epsilon_values;
    std::vector<double> phi_values;
    std::vector<int> p_values;
    std::vector<NetworkKind> networks;
    std::size_t replicates = 100;
    std::uint64_t base_seed = 0;
    std::size_t max_steps = 1'000'000;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

struct Cell {
    NetworkKind network;
    std::size_t n;
    int p;
    double epsilon;
    double phi;

    bool operator==(const Cell&) const = default;
};

struct CellResult {
    Cell cell;
    std::size_t replicates = 0;  ///< Stable runs the statistics cover
    std::size_t cap_hits = 0;
    double mean_T = 0.0;
    double std_T = 0.0;
    double mean_m = 0.0;
    double std_m = 0.0;

    bool operator==(const CellResult&) const = default;
};

/// Fig. 2 style grid: n = 10..100 step 10, p in {2,3,4}, epsilon 0.5,
/// phi 0.1, all networks, 100 replicates (20 with desk_scale).
SweepSpec default_steps_spec(bool desk_scale = false);

/// Cluster grid: epsilon = 0.30..0.50 step 0.02, n = 10..100, p 2, phi 0.1,
/// all networks, 1500 replicates. desk_scale: n <= 50, 100 replicates.
SweepSpec default_clusters_spec(bool desk_scale = false);

/// Cartesian product in (network, n, p, epsilon, phi) nesting order.
/// Throws ConfigError if any cell is invalid.
std::vector<Cell> expand_grid(const SweepSpec& spec);

/// Stream id of replicate r of a cell. Depends on the cell's parameters only,
/// not on its position in the grid.
std::uint64_t replicate_stream_id(const Cell& cell, std::size_t replicate);

/// Sees every finished replicate. Called from worker threads.
using ReplicateObserver = std::function<void(const Cell&, std::size_t replicate, const RunTrace&)>;

/// Runs every replicate of every cell. Results come back in grid order and
/// are independent of the thread count. CapHit replicates are counted in
/// cap_hits and left out of the statistics.
std::vector<CellResult> run_sweep(const SweepSpec& spec, const ReplicateObserver& observer = {});

/// Both sweeps evaluate T and m for every cell; they differ in the default
/// grid and in which columns the CSV writers emit. Output is summarized.
std::vector<CellResult> sweep_steps(const SweepSpec& spec, const ReplicateObserver& observer = {});
std::vector<CellResult> sweep_clusters(const SweepSpec& spec, const ReplicateObserver& observer = {});

/// Canonical order (network, n, p, epsilon, phi).
std::vector<CellResult> summarize(std::vector<CellResult> results);

struct MeanStd {
    double mean;
    double stddev;  ///< sample standard deviation, 0 for fewer than two values
};
MeanStd mean_std(const std::vector<double>& values);

/// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace coevo
