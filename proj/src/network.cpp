#include "coevo/network.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>

#include "coevo/dynamics.hpp"

namespace coevo {

namespace {

OpinionProfile uniform_opinions(std::size_t n, RngStream& rng) {
    OpinionProfile profile;
    profile.opinions.resize(n);
    // uniform01 is [0, 1); 1.0 itself has measure zero.
    for (auto& o : profile.opinions) o = rng.uniform01();
    return profile;
}

double truncated_normal01(double mean, double stddev, RngStream& rng) {
    for (;;) {
        const double x = rng.normal(mean, stddev);
        if (x >= 0.0 && x <= 1.0) return x;
    }
}

}  // namespace

InitialCondition gen_complete(std::size_t n, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("gen_complete: n must be at least 2");
    InitialCondition ic{RelationNetwork::complete(n), {}};
    ic.opinions = uniform_opinions(n, rng);
    return ic;
}

InitialCondition gen_scale_free(std::size_t n, RngStream& rng) {
    constexpr std::size_t m = kScaleFreeSeed;
    if (n <= m) throw std::invalid_argument("gen_scale_free: n must exceed 4");

    RelationNetwork net(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) net.set_link(i, j, true);

    std::vector<double> weights;
    std::vector<std::size_t> targets;
    targets.reserve(m);
    for (std::size_t v = m; v < n; ++v) {
        // Attachment weights are fixed to the degrees before v links in.
        weights.assign(v, 0.0);
        for (std::size_t u = 0; u < v; ++u) weights[u] = static_cast<double>(net.degree(u));
        std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

        targets.clear();
        while (targets.size() < m) {
            const std::size_t u = pick(rng);
            if (std::find(targets.begin(), targets.end(), u) == targets.end()) targets.push_back(u);
        }
        for (std::size_t u : targets) net.set_link(v, u, true);
    }

    InitialCondition ic{std::move(net), {}};
    ic.opinions = uniform_opinions(n, rng);
    return ic;
}

InitialCondition gen_community(std::size_t n, RngStream& rng) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("gen_community: n must be even and at least 4");
    const std::size_t half = n / 2;
    auto community_of = [half](std::size_t v) { return v < half ? 0 : 1; };

    RelationNetwork net(n);
    std::vector<std::pair<std::size_t, std::size_t>> internal;
    for (std::size_t c = 0; c < 2; ++c) {
        const std::size_t lo = c * half;
        for (std::size_t i = lo; i < lo + half; ++i)
            for (std::size_t j = i + 1; j < lo + half; ++j) {
                net.set_link(i, j, true);
                internal.emplace_back(i, j);
            }
    }

    std::vector<std::size_t> candidates;
    candidates.reserve(half);
    for (auto [a, b] : internal) {
        if (rng.uniform01() >= kCommunityRewireProbability) continue;
        const bool keep_first = rng.uniform01() < 0.5;
        const std::size_t kept = keep_first ? a : b;
        const std::size_t other_lo = community_of(kept) == 0 ? half : 0;

        candidates.clear();
        for (std::size_t w = other_lo; w < other_lo + half; ++w)
            if (!net.linked(kept, w)) candidates.push_back(w);
        // Every node of the other community is already a neighbour.
        if (candidates.empty()) continue;

        const std::size_t w = candidates[rng.uniform_index(candidates.size())];
        net.set_link(a, b, false);
        net.set_link(kept, w, true);
    }

    InitialCondition ic{std::move(net), {}};
    ic.opinions.opinions.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        ic.opinions.opinions[v] = truncated_normal01(kCommunityMeans[community_of(v)], kCommunityStddev, rng);
    return ic;
}

InitialCondition generate_initial(const SimConfig& cfg, RngStream& rng) {
    switch (cfg.network_kind) {
        case NetworkKind::Complete: return gen_complete(cfg.n, rng);
        case NetworkKind::ScaleFree: return gen_scale_free(cfg.n, rng);
        case NetworkKind::Community: return gen_community(cfg.n, rng);
    }
    throw std::invalid_argument("generate_initial: unknown network kind");
}

std::vector<std::size_t> degrees(const RelationNetwork& net) { return net.degrees(); }

void rewire_in_place(RelationNetwork& net, const DistanceMatrix& dist, double epsilon, double phi) {
    const std::size_t n = net.size();
    assert(dist.size() == n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            if (d >= epsilon)
                net.set_link(i, j, false);
            else if (d < phi)
                net.set_link(i, j, true);
        }
}

RelationNetwork rewire(const RelationNetwork& net, const DistanceMatrix& dist, double epsilon, double phi) {
    RelationNetwork out = net;
    rewire_in_place(out, dist, epsilon, phi);
    return out;
}

}  // namespace coevo
