#include "zlap/graph.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "zlap/error.hpp"

namespace zlap {

Graph::Graph(int n, const std::vector<Edge>& edges, bool directed)
    : n_(n), directed_(directed), weights_(n, n) {
  if (n < 1) throw input_error("graph needs at least one vertex");
  for (const Edge& e : edges) {
    check_index(e.u);
    check_index(e.v);
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw input_error("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") has negative or non-finite weight");
    weights_(e.u, e.v) += e.w;
    if (!directed_ && e.u != e.v) weights_(e.v, e.u) = weights_(e.u, e.v);
  }
}

Graph Graph::from_weights(Matrix weights, bool directed) {
  if (weights.rows() != weights.cols() || weights.rows() < 1)
    throw input_error("adjacency matrix must be square and nonempty");
  Graph g;
  g.n_ = weights.rows();
  g.directed_ = directed;
  for (int i = 0; i < g.n_; ++i)
    for (int j = 0; j < g.n_; ++j) {
      const double w = weights(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw input_error("adjacency entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is negative or non-finite");
      if (!directed && weights(i, j) != weights(j, i))
        throw input_error("undirected graph requires an exactly symmetric matrix");
    }
  g.weights_ = std::move(weights);
  return g;
}

void Graph::check_index(int u) const {
  if (u < 0 || u >= n_)
    throw input_error("vertex index " + std::to_string(u) + " out of range [0," +
                      std::to_string(n_) + ")");
}

double Graph::weight(int u, int v) const {
  check_index(u);
  check_index(v);
  return weights_(u, v);
}

DegreeVector Graph::degrees(Degree kind) const {
  DegreeVector d;
  d.kind = kind;
  d.values.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (kind == Degree::Out)
        d.values[i] += weights_(i, j);
      else
        d.values[i] += weights_(j, i);
    }
  return d;
}

double Graph::total_traffic() const {
  double t = 0.0;
  for (double w : weights_.data()) t += w;
  return t;
}

Graph Graph::with_edge(int u, int v, double w) const {
  check_index(u);
  check_index(v);
  if (!std::isfinite(w) || w < 0.0) throw input_error("edge weight must be finite and >= 0");
  Graph g = *this;
  g.weights_(u, v) += w;
  if (!directed_ && u != v) g.weights_(v, u) = g.weights_(u, v);
  return g;
}

bool Graph::connected() const {
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n_; ++v) {
      if (!seen[v] && (weights_(u, v) > 0.0 || weights_(v, u) > 0.0)) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n_;
}

}  // namespace zlap
