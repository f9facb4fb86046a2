#include "coevo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace coevo {

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ClusterPartition extract_clusters(const OpinionProfile& opinions, double epsilon, double phi) {
    const std::size_t n = opinions.size();
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(opinions[i] - opinions[j]);
            if (in_band(d, epsilon, phi))
                throw NotStable("extract_clusters: individuals " + std::to_string(i + 1) + " and " +
                                std::to_string(j + 1) + " are still negotiable");
            if (d < phi) sets.unite(i, j);
        }

    // Roots are the smallest member of each component, so visiting in index
    // order yields clusters sorted by smallest member.
    ClusterPartition out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = sets.find(i);
        if (slot[r] == n) {
            slot[r] = out.clusters.size();
            out.clusters.emplace_back();
        }
        out.clusters[slot[r]].push_back(i);
    }
    return out;
}

double aggregate(const OpinionProfile& opinions, const std::vector<std::size_t>& degrees) {
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        weighted += opinions[i] * static_cast<double>(degrees[i]);
        total += static_cast<double>(degrees[i]);
    }
    if (total == 0.0) {
        if (opinions.size() == 0) return 0.0;
        return std::accumulate(opinions.opinions.begin(), opinions.opinions.end(), 0.0) /
               static_cast<double>(opinions.size());
    }
    return weighted / total;
}

StableOutcome outcome(const RunTrace& trace) {
    if (trace.terminated != Termination::Stable)
        throw NotStable("trace hit the step cap after " + std::to_string(trace.T) + " interactions");
    StableOutcome out{trace.T, trace.final_opinions, trace.final_network, {}, 0.0};
    out.partition = extract_clusters(trace.final_opinions, trace.config.epsilon, trace.config.phi);
    out.aggregate = aggregate(trace.final_opinions, trace.final_network.degrees());
    return out;
}

TraceSummary trace_stats(const RunTrace& trace) {
    const StableOutcome o = outcome(trace);
    const auto [lo, hi] = std::minmax_element(o.final_opinions.opinions.begin(), o.final_opinions.opinions.end());
    return {o.T, o.partition.m(), o.aggregate, *hi - *lo};
}

}  // namespace coevo
