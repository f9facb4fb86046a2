#pragma once

#include <cstddef>
#include <vector>

#include "coevo/core.hpp"

namespace coevo {

class DistanceMatrix;

struct InitialCondition {
    RelationNetwork network;
    OpinionProfile opinions;  // t = 0
};

/// Cross-community link probability of the community generator.
inline constexpr double kCommunityRewireProbability = 0.1;
inline constexpr double kCommunityMeans[2] = {0.25, 0.75};
inline constexpr double kCommunityStddev = 0.1;

/// Fully linked network, opinions i.i.d. uniform on [0, 1].
InitialCondition gen_complete(std::size_t n, RngStream& rng);

/// Preferential attachment. The 4 seed vertices form a clique; every later
/// vertex links to 4 distinct earlier vertices drawn with probability
/// proportional to their current degree (collisions are redrawn). Opinions
/// are i.i.d. uniform on [0, 1].
InitialCondition gen_scale_free(std::size_t n, RngStream& rng);

/// Two fully connected communities of n/2 vertices each ([0, n/2) and
/// [n/2, n)). Every internal link is, with probability 0.1, rewired: one
/// endpoint (chosen by a fair coin) is kept and the other is replaced by a
/// uniformly chosen vertex of the other community not already linked to the
/// kept endpoint. Link count is preserved.
///
/// Opinions: community 1 ~ N(0.25, 0.1), community 2 ~ N(0.75, 0.1), each draw
/// rejected and resampled until it lands in [0, 1].
///
/// Per-link rewiring is used rather than independent per-pair linking.
InitialCondition gen_community(std::size_t n, RngStream& rng);

/// Dispatches on cfg.network_kind with cfg.n.
InitialCondition generate_initial(const SimConfig& cfg, RngStream& rng);

std::vector<std::size_t> degrees(const RelationNetwork& net);

/// Distance-driven link update over every pair i < j:
///   d >= epsilon        -> unlinked
///   d <  phi            -> linked
///   phi <= d < epsilon  -> unchanged
RelationNetwork rewire(const RelationNetwork& net, const DistanceMatrix& dist, double epsilon, double phi);
void rewire_in_place(RelationNetwork& net, const DistanceMatrix& dist, double epsilon, double phi);

}  // namespace coevo
