#pragma once

#include <vector>

#include "zlap/matrix.hpp"

namespace zlap {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

enum class Degree { Out, In };

struct DegreeVector {
  Vec values;
  Degree kind = Degree::Out;
};

// Weighted adjacency with an explicit directedness flag. Undirected graphs
// are stored with an exactly symmetric weight matrix: every mutation writes
// the same double to (u,v) and (v,u), so symmetry never depends on a
// floating comparison. Immutable after construction; mutators return copies.
class Graph {
 public:
  // Duplicate (u,v) entries sum their weights. For undirected graphs each
  // listed edge is stored in both directions; a self-loop weight counts once
  // toward the vertex degree.
  Graph(int n, const std::vector<Edge>& edges, bool directed);

  static Graph from_weights(Matrix weights, bool directed);

  int size() const { return n_; }
  bool directed() const { return directed_; }
  const Matrix& weights() const { return weights_; }
  double weight(int u, int v) const;

  DegreeVector degrees(Degree kind) const;
  Vec out_degrees() const { return degrees(Degree::Out).values; }
  Vec in_degrees() const { return degrees(Degree::In).values; }

  // Sum of all out-degrees; 2|E| for an unweighted undirected graph with no
  // self-loops.
  double total_traffic() const;

  // Returns a new graph with weights[u][v] increased by w (both directions
  // if undirected; a self-loop is written once).
  Graph with_edge(int u, int v, double w) const;

  // Connectivity of the undirected support (edge wherever either direction
  // has positive weight), by BFS.
  bool connected() const;

 private:
  Graph() = default;
  void check_index(int u) const;

  int n_ = 0;
  bool directed_ = false;
  Matrix weights_;
};

}  // namespace zlap
