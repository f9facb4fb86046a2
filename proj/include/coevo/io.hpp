#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coevo/dynamics.hpp"
#include "coevo/experiments.hpp"

namespace coevo::io {

// Reals are written with 17 significant digits so they parse back to the same
// double. Individual indices are 1-based in every output format.

inline constexpr const char* kTraceHeader = "t,i,j,d_before,k_i,k_j,alpha_i,alpha_j,o_i_after,o_j_after";
inline constexpr const char* kStepsHeader = "network,n,p,epsilon,phi,replicates,mean_steps,std_steps,cap_hits";
inline constexpr const char* kClustersHeader = "network,n,epsilon,phi,p,replicates,mean_clusters,std_clusters,cap_hits";

std::string format_real(double v);

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_steps_csv(std::ostream& out, const std::vector<CellResult>& rows);
void write_clusters_csv(std::ostream& out, const std::vector<CellResult>& rows);

/// JSON document holding config, initial condition, records and final state.
std::string trace_to_json(const RunTrace& trace, int indent = -1);
/// Inverse of trace_to_json. Throws std::runtime_error on malformed input.
RunTrace trace_from_json(const std::string& text);

}  // namespace coevo::io
