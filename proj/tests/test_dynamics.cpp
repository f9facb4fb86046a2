#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coevo/dynamics.hpp"
#include "oracle.hpp"

using namespace coevo;

namespace {

OpinionProfile profile(std::vector<double> o) { return OpinionProfile{std::move(o), 0}; }

SimConfig config(std::size_t n, double eps, double phi, int p, NetworkKind kind = NetworkKind::Complete,
                 std::uint64_t seed = 0) {
    SimConfig c;
    c.n = n;
    c.epsilon = eps;
    c.phi = phi;
    c.p = p;
    c.network_kind = kind;
    c.seed = seed;
    return c;
}

InitialCondition linked_pair(double a, double b) { return {RelationNetwork::complete(2), profile({a, b})}; }

}  // namespace

TEST_CASE("distance_matrix") {
    CHECK(distance_matrix(profile({0.2, 0.9}))(0, 1) == doctest::Approx(0.7));
    const auto same = distance_matrix(profile({0.3, 0.3, 0.3}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(same(i, j) == 0.0);
    const auto d = distance_matrix(profile({0.1, 0.4, 0.8}));
    const double expected[3][3] = {{0, 0.3, 0.7}, {0.3, 0, 0.4}, {0.7, 0.4, 0}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == doctest::Approx(expected[i][j]));
}

TEST_CASE("negotiable_set uses the half-open band") {
    const auto d = distance_matrix(profile({0.0, 0.05, 0.3, 0.7}));
    CHECK(negotiable_set(0, d, 0.5, 0.1) == std::vector<std::size_t>{2});
    CHECK(negotiable_set(0, distance_matrix(profile({0.5, 0.52, 0.51})), 0.5, 0.1).empty());

    // 0.1 - 0 == 0.1 and 0.5 - 0 == 0.5 exactly.
    const auto edges = distance_matrix(profile({0.0, 0.1, 0.5}));
    CHECK(negotiable_set(0, edges, 0.5, 0.1) == std::vector<std::size_t>{1});

    RngStream rng(8, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> o(7);
        for (auto& v : o) v = rng.uniform01();
        const auto m = distance_matrix(profile(o));
        for (std::size_t i = 0; i < o.size(); ++i)
            for (std::size_t j : negotiable_set(i, m, 0.4, 0.1)) {
                const auto back = negotiable_set(j, m, 0.4, 0.1);
                CHECK(std::find(back.begin(), back.end(), i) != back.end());
            }
    }
}

TEST_CASE("is_stable") {
    CHECK(is_stable(distance_matrix(profile({0.1, 0.12, 0.9})), 0.5, 0.1));
    CHECK_FALSE(is_stable(distance_matrix(profile({0.1, 0.4})), 0.5, 0.1));
    CHECK(is_stable(distance_matrix(profile({0.42})), 0.5, 0.1));
}

TEST_CASE("recommend picks the band maximum") {
    DistanceMatrix d(3);
    d.set(0, 1, 0.3);
    d.set(0, 2, 0.45);
    d.set(1, 2, 0.2);
    RngStream rng(1, 1);
    CHECK(recommend(d, 0.5, 0.1, rng) == Pair{0, 2});
    // Only a unique maximum: no random draw.
    CHECK(rng.draws() == 0);

    d.set(0, 2, 0.8);
    CHECK(recommend(d, 0.5, 0.1, rng) == Pair{0, 1});
    CHECK_FALSE(recommend(distance_matrix(profile({0.1, 0.12, 0.9})), 0.5, 0.1, rng).has_value());
}

TEST_CASE("recommend breaks exact ties uniformly") {
    DistanceMatrix d(3);
    d.set(0, 1, 0.4);
    d.set(0, 2, 0.4);
    d.set(1, 2, 0.8);
    int first = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        RngStream rng(12345, t);
        const auto pick = recommend(d, 0.5, 0.1, rng);
        REQUIRE(pick.has_value());
        CHECK((*pick == Pair{0, 1} || *pick == Pair{0, 2}));
        first += *pick == Pair{0, 1};
    }
    CHECK(std::abs(first / double(trials) - 0.5) <= 0.02);
}

TEST_CASE("convergence_params") {
    auto a = convergence_params(3, 3, 2);
    CHECK(a.alpha_i == 0.75);
    CHECK(a.alpha_j == 0.75);

    a = convergence_params(3, 1, 2);
    CHECK(a.alpha_i == doctest::Approx(0.875));
    CHECK(a.alpha_j == doctest::Approx(0.625));

    a = convergence_params(5, 0, 4);
    CHECK(a.alpha_i == 1.0);
    CHECK(a.alpha_j == doctest::Approx(0.75));

    a = convergence_params(0, 0, 3);
    CHECK(a.alpha_i == doctest::Approx(1.0 - 1.0 / 6.0));
    CHECK(a.alpha_i == a.alpha_j);

    for (int p = 2; p <= 6; ++p)
        for (std::size_t ki = 0; ki < 12; ++ki)
            for (std::size_t kj = 0; kj < 12; ++kj) {
                const auto c = convergence_params(ki, kj, p);
                const double lo = 1.0 - 1.0 / p;
                CHECK(c.alpha_i >= lo - 1e-15);
                CHECK(c.alpha_j >= lo - 1e-15);
                CHECK(c.alpha_j <= 1.0);
                // alpha == 1 only for the partner of an isolated individual.
                if (c.alpha_i == 1.0) CHECK(kj == 0);
                CHECK(c.alpha_i + c.alpha_j == doctest::Approx(2.0 - 1.0 / p).epsilon(1e-15));
            }
}

TEST_CASE("update_pair") {
    auto [a, b] = update_pair(0.8, 0.2, 0.75, 0.75);
    CHECK(a == doctest::Approx(0.65));
    CHECK(b == doctest::Approx(0.35));
    CHECK(a - b == doctest::Approx(0.5 * 0.6));

    for (double x : {0.0, 0.3, 0.5, 0.77, 1.0}) {
        auto [u, v] = update_pair(x, x, 0.75, 0.75);
        CHECK(u == doctest::Approx(x).epsilon(1e-15));
        CHECK(v == doctest::Approx(x).epsilon(1e-15));
    }

    std::tie(a, b) = update_pair(0.9, 0.1, 1.0, 0.75);
    CHECK(a == 0.9);
    CHECK(b == doctest::Approx(0.3));
}

TEST_CASE("step hand trace for two linked individuals") {
    const SimConfig cfg = config(2, 0.5, 0.1, 2);
    SimState state{profile({0.2, 0.5}), RelationNetwork::complete(2)};
    RngStream rng(0, 0);

    auto rec = step(state, cfg, rng);
    REQUIRE(rec.has_value());
    CHECK(rec->t == 0);
    CHECK(rec->k_i == 1);
    CHECK(rec->k_j == 1);
    CHECK(rec->d_before == doctest::Approx(0.3));
    CHECK(std::abs(state.opinions[1] - state.opinions[0]) == doctest::Approx(0.15));
    CHECK(state.network.linked(0, 1));
    CHECK(state.opinions.t == 1);

    rec = step(state, cfg, rng);
    REQUIRE(rec.has_value());
    CHECK(std::abs(state.opinions[1] - state.opinions[0]) == doctest::Approx(0.075));

    // Now 0.075 < phi: stable, state untouched, no rewiring.
    const SimState before = state;
    CHECK_FALSE(step(state, cfg, rng).has_value());
    CHECK(state.opinions.opinions == before.opinions.opinions);
    CHECK(state.network == before.network);
}

TEST_CASE("stable input yields StableSignal without rewiring") {
    const SimConfig cfg = config(3, 0.5, 0.1, 2);
    // (0, 2) is hostile but still linked: a stable step must not touch it.
    SimState state{profile({0.1, 0.12, 0.9}), RelationNetwork::complete(3)};
    RngStream rng(0, 0);
    CHECK_FALSE(step(state, cfg, rng).has_value());
    CHECK(state.network.linked(0, 2));
}

TEST_CASE("run on two individuals") {
    const SimConfig cfg = config(2, 0.5, 0.1, 2);
    RngStream rng(0, 0);
    auto trace = run_from(cfg, linked_pair(0.3, 0.35), rng);
    CHECK(trace.T == 0);
    CHECK(trace.terminated == Termination::Stable);

    // Exact arithmetic in units of 1/40: distance 16 -> 8 -> 4 (= phi, still
    // negotiable) -> 2. Three interactions.
    std::size_t exact_steps = 0;
    for (int d = 16; d >= 4; d /= 2) ++exact_steps;
    CHECK(exact_steps == 3);

    trace = run_from(cfg, linked_pair(0.0, 0.4), rng);
    CHECK(trace.T == exact_steps);
    CHECK(trace.terminated == Termination::Stable);
    CHECK(trace.records.size() == trace.T);
}

TEST_CASE("run is deterministic") {
    for (NetworkKind kind : {NetworkKind::Complete, NetworkKind::ScaleFree, NetworkKind::Community}) {
        const SimConfig cfg = config(30, 0.4, 0.1, 3, kind, 17);
        const RunTrace a = run(cfg, 5);
        const RunTrace b = run(cfg, 5);
        CHECK(a.records == b.records);
        CHECK(a.final_opinions.opinions == b.final_opinions.opinions);
        CHECK(a.final_network == b.final_network);
        CHECK(run(cfg, 6).initial.opinions.opinions != a.initial.opinions.opinions);
    }
    CHECK_THROWS_AS(run(config(10, 0.5, 0.5, 2)), ConfigError);
}

TEST_CASE("trace invariants over random runs") {
    for (NetworkKind kind : {NetworkKind::Complete, NetworkKind::ScaleFree, NetworkKind::Community})
        for (int p = 2; p <= 4; ++p)
            for (std::uint64_t r = 0; r < 15; ++r) {
                const SimConfig cfg = config(20, r % 2 ? 0.5 : 0.35, 0.1, p, kind, 99);
                const RunTrace tr = run(cfg, r);
                REQUIRE(tr.terminated == Termination::Stable);

                std::vector<double> o = tr.initial.opinions.opinions;
                for (const auto& rec : tr.records) {
                    CHECK(rec.d_before >= cfg.phi);
                    CHECK(rec.d_before < cfg.epsilon);
                    CHECK(rec.alpha_i >= 1.0 - 1.0 / p - 1e-15);
                    CHECK(rec.alpha_j >= 1.0 - 1.0 / p - 1e-15);
                    CHECK(std::abs(std::abs(rec.o_i_after - rec.o_j_after) - (1.0 - 1.0 / p) * rec.d_before) <= 1e-12);
                    CHECK((rec.o_i_after > rec.o_j_after) == (rec.o_i_before > rec.o_j_before));
                    const double lo = *std::min_element(o.begin(), o.end());
                    const double hi = *std::max_element(o.begin(), o.end());
                    o[rec.i] = rec.o_i_after;
                    o[rec.j] = rec.o_j_after;
                    CHECK(*std::min_element(o.begin(), o.end()) >= lo);
                    CHECK(*std::max_element(o.begin(), o.end()) <= hi);
                }
                CHECK(replay(tr.initial.opinions, tr.records).opinions == tr.final_opinions.opinions);
                const auto d = distance_matrix(tr.final_opinions);
                for (std::size_t i = 0; i < cfg.n; ++i)
                    for (std::size_t j = i + 1; j < cfg.n; ++j) {
                        CHECK((d(i, j) < cfg.phi || d(i, j) >= cfg.epsilon));
                        CHECK(tr.final_network.linked(i, j) == (d(i, j) < cfg.phi));
                    }
            }
}

TEST_CASE("a pair leaves the band within the contraction bound") {
    RngStream draw(4, 4);
    for (int p = 2; p <= 4; ++p)
        for (double eps : {0.3, 0.5, 0.8})
            for (double phi : {0.05, 0.1, 0.2}) {
                if (phi >= eps) continue;
                const auto bound = static_cast<std::size_t>(std::ceil(std::log(phi / eps) / std::log(1.0 - 1.0 / p)));
                for (int k = 0; k < 20; ++k) {
                    const double d0 = phi + draw.uniform01() * (eps - phi);
                    const double a = draw.uniform01() * (1.0 - d0);
                    RngStream rng(0, 0);
                    const RunTrace tr = run_from(config(2, eps, phi, p), linked_pair(a, a + d0), rng);
                    CHECK(tr.terminated == Termination::Stable);
                    CHECK(tr.T >= 1);
                    CHECK(tr.T <= bound);
                }
            }
}

TEST_CASE("engine matches the brute-force loop on small instances") {
    RngStream gen(31, 0);
    for (std::size_t n = 2; n <= 5; ++n)
        for (int trial = 0; trial < 300; ++trial) {
            InitialCondition ic{RelationNetwork(n), profile(std::vector<double>(n))};
            for (auto& v : ic.opinions.opinions) v = std::round(gen.uniform01() * 40) / 40;
            // Mix complete networks with random ones.
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) ic.network.set_link(i, j, trial % 2 || gen.uniform01() < 0.5);
            const int p = 2 + trial % 3;
            const double eps = trial % 4 < 2 ? 0.5 : 0.35;
            const SimConfig cfg = config(n, eps, 0.1, p);

            RngStream engine_rng(7, trial), oracle_rng(7, trial);
            const RunTrace tr = run_from(cfg, ic, engine_rng);
            // Livelocked instances are compared over the steps the engine ran.
            const std::size_t cap = tr.cycle_period ? tr.T : 100000;
            const auto ref = oracle::brute_force(ic.opinions.opinions, oracle::to_matrix(ic.network), eps, 0.1, p,
                                                 oracle_rng, cap);
            CHECK(ref.stable == (tr.terminated == Termination::Stable));
            CHECK(tr.T == ref.T);
            CHECK(tr.final_opinions.opinions == ref.final_opinions);
            CHECK(oracle::to_matrix(tr.final_network) == ref.final_adjacency);
        }
}

TEST_CASE("an isolated individual trapped between two anchors is detected as a cycle") {
    // Anchors 0 and 4 are mutually hostile and each has one close partner;
    // 2 has no links, so only 2 ever moves and it settles into a 2-cycle
    // between (2a + b)/3 and (a + 2b)/3.
    const std::vector<double> o = {0.0, 0.03125, 0.3, 0.59375, 0.625};
    RelationNetwork net(5);
    net.set_link(0, 1, true);
    net.set_link(3, 4, true);
    const SimConfig cfg = config(5, 0.5, 0.1, 2);

    RngStream rng(0, 0);
    const RunTrace tr = run_from(cfg, {net, profile(o)}, rng);
    CHECK(tr.terminated == Termination::CapHit);
    CHECK(tr.cycle_period == 2);
    CHECK(tr.T < 200);
    CHECK_THROWS_AS(require_stable(tr), NonTermination);
    for (const auto& rec : tr.records) {
        CHECK((rec.i == 2 || rec.j == 2));
        CHECK(std::abs(std::abs(rec.o_i_after - rec.o_j_after) - 0.5 * rec.d_before) <= 1e-12);
    }

    // Without cycle detection the same run would spin until the cap.
    SimConfig capped = cfg;
    capped.max_steps = 1;
    RngStream rng2(0, 0);
    const RunTrace short_run = run_from(capped, {net, profile(o)}, rng2);
    CHECK(short_run.terminated == Termination::CapHit);
    CHECK(short_run.T == 1);
}
