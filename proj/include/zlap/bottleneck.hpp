#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zlap/graph.hpp"
#include "zlap/operators.hpp"

namespace zlap {

struct CutResult {
  std::vector<int> subset;  // S, sorted ascending
  double cut = 0.0;         // sum of w_ij + w_ji across the boundary
  double vol_s = 0.0;       // degree volume of S, self-loops counted once
  double vol_rest = 0.0;
  double conductance = 0.0;  // cut / min(vol_s, vol_rest)
};

// Conductance of a fixed subset. The cut counts both directions of every
// boundary edge, so undirected values are twice the single-counted textbook
// convention.
CutResult conductance(const Graph& w, const std::vector<int>& subset);

enum class CutMethod { Brute, Sweep };
const char* cut_method_name(CutMethod m);
CutMethod cut_method_from_name(const std::string& name);

// Brute: exact minimum over all 2^(n-1)-1 bipartitions (n <= 24).
// Sweep: prefix cuts along the Fiedler ordering of the symmetric-basis
// Laplacian of W. Both report the smaller side, ties broken by smaller |S|
// then lexicographic vertex list.
CutResult min_conductance(const Graph& w, CutMethod method);

enum class Protocol { Base, RandomAccess, TdmaSaturated, TdmaMatched };
const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

struct ProtocolModel {
  Protocol protocol = Protocol::Base;
  Graph transformed;   // W, with protocol delays absorbed as self-loops
  Vec delay;           // T
  ZLaplacian laplacian;
  double traffic = 0.0;  // total_traffic(W)
};

// base:           T = I, W = A
// random_access:  T = D, W = D(T-I) + A
// tdma_saturated: W' = D^{-1}AD^{-1}, tau_i = d_i(A)/d_i(W') (conserves
//                 per-vertex traffic), W = D_W'(T-I) + W'
// tdma_matched:   W = W', no delays
ProtocolModel protocol_model(const Graph& g, Protocol protocol);

struct HealOutcome {
  int u = 0;
  int v = 0;
  double phi_star = 0.0;
  CutResult cut;
};

// Inserts each candidate edge at the given bandwidth, rebuilds the protocol
// model (recomputing delays from the new degrees only when delay_update is
// set), reruns the bottleneck search, and ranks by descending phi*.
std::vector<HealOutcome> heal_rank(const Graph& g, Protocol protocol,
                                   const std::vector<std::pair<int, int>>& candidates,
                                   double bandwidth, bool delay_update,
                                   CutMethod method = CutMethod::Brute);

}  // namespace zlap
