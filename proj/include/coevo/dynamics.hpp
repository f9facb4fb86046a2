#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coevo/core.hpp"
#include "coevo/network.hpp"

namespace coevo {

/// Pairwise opinion distances d_ij = |o_i - o_j|, stored densely.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

DistanceMatrix distance_matrix(const OpinionProfile& opinions);
void distance_matrix_into(const std::vector<double>& opinions, DistanceMatrix& out);

/// Half-open negotiable band [phi, epsilon). The recommendation rule is once
/// written with a closed upper end; a distance equal to epsilon is treated as
/// hostile everywhere, matching the rewiring rule and the negotiable set.
inline bool in_band(double d, double epsilon, double phi) noexcept { return phi <= d && d < epsilon; }

/// {j != i : phi <= d_ij < epsilon}, ascending.
std::vector<std::size_t> negotiable_set(std::size_t i, const DistanceMatrix& dist, double epsilon, double phi);

/// True iff no off-diagonal distance lies in the band.
bool is_stable(const DistanceMatrix& dist, double epsilon, double phi);

struct Pair {
    std::size_t i;
    std::size_t j;  // i < j
    bool operator==(const Pair&) const = default;
};

/// The band pair of largest distance. Pairs are enumerated in canonical
/// (i < j) order; exact ties are broken uniformly with one draw from `rng`
/// (no draw is made when the maximum is unique).
std::optional<Pair> recommend(const DistanceMatrix& dist, double epsilon, double phi, RngStream& rng);

struct ConvergenceParams {
    double alpha_i;
    double alpha_j;
};

/// alpha_i = 1 - k_j / ((k_i + k_j) p), alpha_j = 1 - k_i / ((k_i + k_j) p);
/// two isolated individuals are treated as k_i = k_j = 1.
ConvergenceParams convergence_params(std::size_t k_i, std::size_t k_j, int p);

/// o_i' = alpha_i o_i + (1 - alpha_i) o_j and symmetrically for j.
std::pair<double, double> update_pair(double o_i, double o_j, double alpha_i, double alpha_j);

struct InteractionRecord {
    std::size_t t;
    std::size_t i;
    std::size_t j;
    double d_before;
    std::size_t k_i;
    std::size_t k_j;
    double alpha_i;
    double alpha_j;
    double o_i_before;
    double o_j_before;
    double o_i_after;
    double o_j_after;

    bool operator==(const InteractionRecord&) const = default;
};

struct SimState {
    OpinionProfile opinions;
    RelationNetwork network;
};

/// One time step: distances, stability test, rewire, weights, recommend,
/// update. Returns nullopt (and leaves `state` untouched) when the profile is
/// already stable.
std::optional<InteractionRecord> step(SimState& state, const SimConfig& cfg, RngStream& rng);

enum class Termination { Stable, CapHit };

struct RunTrace {
    SimConfig config;
    InitialCondition initial;
    std::vector<InteractionRecord> records;
    std::size_t T = 0;
    Termination terminated = Termination::Stable;
    /// Opinions after the last interaction.
    OpinionProfile final_opinions;
    /// Network after the closing rewire pass (the phi-proximity graph when Stable).
    RelationNetwork final_network;
    /// Nonzero when the run was stopped because the state provably repeats
    /// (terminated is then CapHit): length of the detected cycle in steps.
    std::size_t cycle_period = 0;
};

class NonTermination : public std::runtime_error {
public:
    explicit NonTermination(std::size_t steps);
};

/// Generates the initial condition from stream (cfg.seed, stream_id) and runs
/// to a stable state. The same stream then serves tie-breaking. Hitting
/// cfg.max_steps yields a trace with Termination::CapHit.
///
/// Stability is not guaranteed: an isolated individual (degree 0) can be
/// pulled back and forth between two anchors forever, each pull restoring the
/// previous maximum distance. The loop detects an exact repeat of (opinions,
/// network) with no tie-break draw in between and stops early with CapHit and
/// cycle_period set.
RunTrace run(const SimConfig& cfg, std::uint64_t stream_id = 0);

/// Runs from a given initial condition; `rng` is used only for tie-breaking.
RunTrace run_from(const SimConfig& cfg, InitialCondition initial, RngStream& rng);

/// Throws NonTermination if the trace hit the cap.
const RunTrace& require_stable(const RunTrace& trace);

/// Re-applies the recorded (i, j, alpha_i, alpha_j) sequence to `initial`.
OpinionProfile replay(const OpinionProfile& initial, const std::vector<InteractionRecord>& records);

}  // namespace coevo
