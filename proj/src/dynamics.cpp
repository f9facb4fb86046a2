#include "coevo/dynamics.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace coevo {

void distance_matrix_into(const std::vector<double>& opinions, DistanceMatrix& out) {
    const std::size_t n = opinions.size();
    if (out.size() != n) out = DistanceMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, std::abs(opinions[i] - opinions[j]));
}

DistanceMatrix distance_matrix(const OpinionProfile& opinions) {
    DistanceMatrix d(opinions.size());
    distance_matrix_into(opinions.opinions, d);
    return d;
}

std::vector<std::size_t> negotiable_set(std::size_t i, const DistanceMatrix& dist, double epsilon, double phi) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < dist.size(); ++j)
        if (j != i && in_band(dist(i, j), epsilon, phi)) out.push_back(j);
    return out;
}

bool is_stable(const DistanceMatrix& dist, double epsilon, double phi) {
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (in_band(dist(i, j), epsilon, phi)) return false;
    return true;
}

std::optional<Pair> recommend(const DistanceMatrix& dist, double epsilon, double phi, RngStream& rng) {
    const std::size_t n = dist.size();
    double best = -1.0;
    std::vector<Pair> ties;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            if (!in_band(d, epsilon, phi) || d < best) continue;
            if (d > best) {
                best = d;
                ties.clear();
            }
            ties.push_back({i, j});
        }
    if (ties.empty()) return std::nullopt;
    if (ties.size() == 1) return ties.front();
    return ties[rng.uniform_index(ties.size())];
}

ConvergenceParams convergence_params(std::size_t k_i, std::size_t k_j, int p) {
    if (k_i == 0 && k_j == 0) k_i = k_j = 1;
    const double ki = static_cast<double>(k_i);
    const double kj = static_cast<double>(k_j);
    const double denom = (ki + kj) * static_cast<double>(p);
    return {1.0 - kj / denom, 1.0 - ki / denom};
}

std::pair<double, double> update_pair(double o_i, double o_j, double alpha_i, double alpha_j) {
    return {alpha_i * o_i + (1.0 - alpha_i) * o_j, alpha_j * o_j + (1.0 - alpha_j) * o_i};
}

namespace {

// Scratch buffer shared by successive steps of one engine.
struct StepWorkspace {
    DistanceMatrix dist;
};

std::optional<InteractionRecord> step_impl(SimState& state, const SimConfig& cfg, RngStream& rng, StepWorkspace& ws) {
    auto& o = state.opinions.opinions;
    distance_matrix_into(o, ws.dist);
    if (is_stable(ws.dist, cfg.epsilon, cfg.phi)) return std::nullopt;

    rewire_in_place(state.network, ws.dist, cfg.epsilon, cfg.phi);
    // recommend() never looks at the network, so only the pair's degrees are needed.
    const auto pair = recommend(ws.dist, cfg.epsilon, cfg.phi, rng);
    const auto [i, j] = *pair;
    const std::size_t k_i = state.network.degree(i);
    const std::size_t k_j = state.network.degree(j);
    const auto alpha = convergence_params(k_i, k_j, cfg.p);

    InteractionRecord rec{};
    rec.t = state.opinions.t;
    rec.i = i;
    rec.j = j;
    rec.d_before = ws.dist(i, j);
    rec.k_i = k_i;
    rec.k_j = k_j;
    rec.alpha_i = alpha.alpha_i;
    rec.alpha_j = alpha.alpha_j;
    rec.o_i_before = o[i];
    rec.o_j_before = o[j];
    std::tie(o[i], o[j]) = update_pair(o[i], o[j], alpha.alpha_i, alpha.alpha_j);
    rec.o_i_after = o[i];
    rec.o_j_after = o[j];
    ++state.opinions.t;
    return rec;
}

}  // namespace

std::optional<InteractionRecord> step(SimState& state, const SimConfig& cfg, RngStream& rng) {
    StepWorkspace ws;
    return step_impl(state, cfg, rng, ws);
}

NonTermination::NonTermination(std::size_t steps)
    : std::runtime_error("NonTermination: no stable state within " + std::to_string(steps) + " steps") {}

RunTrace run_from(const SimConfig& cfg, InitialCondition initial, RngStream& rng) {
    RunTrace trace;
    trace.config = cfg;
    trace.initial = initial;
    SimState state{std::move(initial.opinions), std::move(initial.network)};
    state.opinions.t = 0;

    StepWorkspace ws;
    // Brent-style cycle check: snapshot at power-of-two step counts and
    // compare every later state against it. A repeat only proves a cycle if
    // no random draw happened in between.
    SimState snapshot = state;
    std::uint64_t snapshot_draws = rng.draws();
    std::size_t snapshot_step = 0;
    std::size_t next_snapshot = 1;

    trace.terminated = Termination::CapHit;
    while (trace.records.size() < cfg.max_steps) {
        auto rec = step_impl(state, cfg, rng, ws);
        if (!rec) {
            trace.terminated = Termination::Stable;
            break;
        }
        trace.records.push_back(*rec);

        const std::size_t s = trace.records.size();
        if (rng.draws() == snapshot_draws && state.opinions.opinions == snapshot.opinions.opinions &&
            state.network == snapshot.network) {
            trace.cycle_period = s - snapshot_step;
            break;
        }
        if (s == next_snapshot) {
            snapshot = state;
            snapshot_draws = rng.draws();
            snapshot_step = s;
            next_snapshot *= 2;
        }
    }
    if (trace.terminated == Termination::CapHit) {
        // The cap may coincide with reaching stability on the last step.
        distance_matrix_into(state.opinions.opinions, ws.dist);
        if (is_stable(ws.dist, cfg.epsilon, cfg.phi)) trace.terminated = Termination::Stable;
    }

    // Closing rewire so the terminal network reflects the final opinions.
    distance_matrix_into(state.opinions.opinions, ws.dist);
    rewire_in_place(state.network, ws.dist, cfg.epsilon, cfg.phi);

    trace.T = trace.records.size();
    trace.final_opinions = std::move(state.opinions);
    trace.final_network = std::move(state.network);
    return trace;
}

RunTrace run(const SimConfig& cfg, std::uint64_t stream_id) {
    const SimConfig checked = validate_config(cfg);
    RngStream rng = derive_stream(checked.seed, stream_id);
    InitialCondition initial = generate_initial(checked, rng);
    return run_from(checked, std::move(initial), rng);
}

const RunTrace& require_stable(const RunTrace& trace) {
    if (trace.terminated != Termination::Stable) throw NonTermination(trace.T);
    return trace;
}

OpinionProfile replay(const OpinionProfile& initial, const std::vector<InteractionRecord>& records) {
    OpinionProfile out = initial;
    for (const auto& r : records) {
        std::tie(out.opinions[r.i], out.opinions[r.j]) =
            update_pair(out.opinions[r.i], out.opinions[r.j], r.alpha_i, r.alpha_j);
        ++out.t;
    }
    return out;
}

}  // namespace coevo
