#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "coevo/core.hpp"
#include "coevo/dynamics.hpp"

namespace coevo {

/// Disjoint, nonempty index sets covering every individual. Members are
/// ascending; clusters are ordered by their smallest member.
struct ClusterPartition {
    std::vector<std::vector<std::size_t>> clusters;

    std::size_t m() const noexcept { return clusters.size(); }
    bool operator==(const ClusterPartition&) const = default;
};

class NotStable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Connected components of the graph {(i, j) : d_ij < phi}.
///
/// The cluster condition "intersection of the phi-balls equals their union"
/// only holds literally for identical opinions; at a stable state it is read
/// as pairwise compatibility, i.e. membership in one component of the
/// phi-proximity relation (which is also the terminal network).
///
/// Throws NotStable when some distance lies in [phi, epsilon).
ClusterPartition extract_clusters(const OpinionProfile& opinions, double epsilon, double phi);

/// Degree-weighted mean sum(o_i k_i) / sum(k_i). Isolated individuals carry
/// zero weight; when every degree is zero the unweighted mean is returned.
double aggregate(const OpinionProfile& opinions, const std::vector<std::size_t>& degrees);

struct StableOutcome {
    std::size_t T;
    OpinionProfile final_opinions;
    RelationNetwork final_network;
    ClusterPartition partition;
    double aggregate;
};

/// Throws NotStable for a CapHit trace.
StableOutcome outcome(const RunTrace& trace);

struct TraceSummary {
    std::size_t T;
    std::size_t m;
    double aggregate;
    double spread;  ///< max - min of the final opinions
};

TraceSummary trace_stats(const RunTrace& trace);

}  // namespace coevo
