#include "zlap/operators.hpp"

#include <cmath>
#include <string>

#include "zlap/error.hpp"

namespace zlap {

const char* recipe_name(Recipe r) {
  switch (r) {
    case Recipe::RandomWalk: return "random-walk";
    case Recipe::Consensus: return "consensus";
    case Recipe::Replicator: return "replicator";
    case Recipe::Sis: return "SIS";
    case Recipe::Nonnegative: return "nonnegative";
    case Recipe::Dual: return "dual";
    case Recipe::Custom: return "custom";
  }
  return "custom";
}

static void check_length(const Vec& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    throw input_error(std::string(what) + " vector length does not match vertex count");
}

void check_bias(const Vec& bias, int n) {
  check_length(bias, n, "bias");
  for (size_t i = 0; i < bias.size(); ++i)
    if (!(bias[i] > 0.0) || !std::isfinite(bias[i]))
      throw input_error("bias factor at vertex " + std::to_string(i) + " must be positive");
}

void check_delays(const Vec& delay, int n, DelayFloor floor) {
  check_length(delay, n, "delay");
  for (size_t i = 0; i < delay.size(); ++i) {
    if (!std::isfinite(delay[i]))
      throw input_error("delay factor at vertex " + std::to_string(i) + " is not finite");
    if (floor == DelayFloor::Unit && delay[i] < 1.0)
      throw input_error("delay factor at vertex " + std::to_string(i) + " is below 1");
    if (floor == DelayFloor::Positive && !(delay[i] > 0.0))
      throw input_error("delay factor at vertex " + std::to_string(i) + " must be positive");
  }
}

void check_replicate(const Vec& replicate, int n) {
  check_length(replicate, n, "replicate");
  for (size_t i = 0; i < replicate.size(); ++i)
    if (!(replicate[i] > 0.0) || !std::isfinite(replicate[i]))
      throw input_error("replicating factor at vertex " + std::to_string(i) +
                        " must be positive");
}

Vec checked_out_degrees(const Graph& g) {
  Vec d = g.out_degrees();
  for (size_t u = 0; u < d.size(); ++u)
    if (!(d[u] > 0.0))
      throw input_error("vertex " + std::to_string(u) + " has zero out-degree");
  return d;
}

Vec checked_in_degrees(const Graph& g) {
  Vec d = g.in_degrees();
  for (size_t u = 0; u < d.size(); ++u)
    if (!(d[u] > 0.0))
      throw input_error("vertex " + std::to_string(u) + " has zero in-degree");
  return d;
}

ShiftOperator random_walk_operator(const Graph& g) {
  const int n = g.size();
  const Vec d = checked_out_degrees(g);
  Matrix p(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) p(u, v) = g.weights()(u, v) / d[u];
  return {std::move(p), Recipe::RandomWalk, std::nullopt};
}

ShiftOperator consensus_operator(const Graph& g) {
  const int n = g.size();
  const Vec d = checked_in_degrees(g);
  Matrix p(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) p(u, v) = g.weights()(u, v) / d[v];
  return {std::move(p), Recipe::Consensus, std::nullopt};
}

Graph bias_transform(const Graph& g, const Vec& bias) {
  const int n = g.size();
  check_bias(bias, n);
  Matrix w(n, n);
  if (g.directed()) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) w(u, v) = g.weights()(u, v) * bias[v];
  } else {
    // diag(B) A diag(B); computed once per unordered pair so symmetry is exact
    for (int u = 0; u < n; ++u)
      for (int v = u; v < n; ++v) {
        const double x = bias[u] * g.weights()(u, v) * bias[v];
        w(u, v) = x;
        w(v, u) = x;
      }
  }
  return Graph::from_weights(std::move(w), g.directed());
}

Graph delay_transform(const Graph& g, const Vec& delay) {
  const int n = g.size();
  check_delays(delay, n, DelayFloor::Unit);
  const Vec d = g.out_degrees();
  Matrix w = g.weights();
  for (int u = 0; u < n; ++u) w(u, u) += d[u] * (delay[u] - 1.0);
  return Graph::from_weights(std::move(w), g.directed());
}

ZLaplacian parameterized_laplacian(const Graph& g, const Vec& bias, const Vec& delay,
                                   DelayFloor floor) {
  const int n = g.size();
  check_delays(delay, n, floor);
  Graph w = bias_transform(g, bias);
  const Vec dw = checked_out_degrees(w);
  Matrix l(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u || w.weights()(u, v) == 0.0) continue;
      l(u, v) = -(w.weights()(u, v) / dw[u]) / delay[u];
    }
    l(u, u) = (1.0 - w.weights()(u, u) / dw[u]) / delay[u];
  }
  return {std::move(l), std::move(w), Vec(n, 1.0), delay};
}

PerronPair power_method_nonnegative(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw input_error("matrix must be square");
  const int n = m.rows();
  for (double v : m.data())
    if (v < 0.0 || !std::isfinite(v))
      throw input_error("power iteration requires a nonnegative matrix");

  Vec x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double prev = 0.0;
  constexpr int kMaxIter = 100000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    Vec y = x * m;
    for (int i = 0; i < n; ++i) y[i] += x[i];  // x (M + I)
    const double lambda = dot(x, y) - 1.0;     // Rayleigh quotient of M
    // Rayleigh quotients settle long before the vector does; require a small
    // eigen-residual as well so downstream conjugation identities hold.
    double residual = 0.0;
    for (int i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - (lambda + 1.0) * x[i]));
    const double ny = norm2(y);
    for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
    if (iter > 0 && std::abs(lambda - prev) < 1e-12 &&
        residual < 1e-12 * std::max(1.0, std::abs(lambda) + 1.0))
      return {lambda, std::move(x)};
    prev = lambda;
  }
  throw numerical_error("power iteration did not converge within 100000 iterations");
}

PerronPair perron_eigenpair(const Graph& g) {
  if (!g.connected()) throw input_error("graph is disconnected");
  return power_method_nonnegative(g.weights());
}

ShiftOperator replicator_operator(const Graph& g) {
  if (g.directed()) throw input_error("replicator requires an undirected graph");
  const PerronPair p = perron_eigenpair(g);
  const int n = g.size();
  Matrix m(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m(u, v) = g.weights()(u, v) / p.value;
  return {std::move(m), Recipe::Replicator, 0.5};
}

Matrix replicator_walk_basis(const Graph& g) {
  if (g.directed()) throw input_error("replicator requires an undirected graph");
  const PerronPair p = perron_eigenpair(g);
  const int n = g.size();
  for (int i = 0; i < n; ++i)
    if (!(p.vector[i] > 0.0))
      throw numerical_error("Perron vector has a nonpositive entry at vertex " +
                            std::to_string(i));
  Matrix w(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) w(u, v) = p.vector[u] * g.weights()(u, v) * p.vector[v];
  Vec dw(n, 0.0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) dw[u] += w(u, v);
  Matrix pw(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) pw(u, v) = w(u, v) / dw[u];
  return pw;
}

ZLaplacian similarity_transform(const Graph& w, const Vec& delay, double rho) {
  if (w.directed()) throw input_error("similarity transform requires an undirected graph");
  if (rho < 0.0 || rho > 1.0) throw input_error("basis parameter rho must lie in [0,1]");
  const int n = w.size();
  check_delays(delay, n, DelayFloor::Unit);
  const Vec d = checked_out_degrees(w);
  Vec left(n), right(n);
  for (int i = 0; i < n; ++i) {
    left[i] = std::pow(delay[i] * d[i], -1.0 + rho);
    right[i] = std::pow(delay[i] * d[i], -rho);
  }
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i || w.weights()(i, j) == 0.0) continue;
      l(i, j) = -(left[i] * w.weights()(i, j) * right[j]);
    }
    l(i, i) = left[i] * (d[i] - w.weights()(i, i)) * right[i];
  }
  return {std::move(l), w, Vec(n, 1.0), delay};
}

ShiftOperator sis_filter(const Graph& g, double mu, double beta) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw input_error("infecting probability mu must lie in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw input_error("curing probability beta must lie in [0,1]");
  const int n = g.size();
  Matrix h(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) h(u, v) = mu * g.weights()(u, v);
    h(u, u) += 1.0 - beta;
  }
  return {std::move(h), Recipe::Sis, std::nullopt};
}

ShiftOperator nonnegative_filter(const Graph& g, const Vec& replicate) {
  const int n = g.size();
  check_replicate(replicate, n);
  const Vec d = checked_out_degrees(g);
  Matrix h(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) h(u, v) = replicate[u] * (g.weights()(u, v) / d[u]);
  return {std::move(h), Recipe::Nonnegative, std::nullopt};
}

ShiftOperator dual_consensus_filter(const Graph& g, const Vec& replicate) {
  const int n = g.size();
  check_replicate(replicate, n);
  const Vec d = checked_in_degrees(g);
  Matrix h(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) h(u, v) = (g.weights()(u, v) / d[v]) * replicate[v];
  return {std::move(h), Recipe::Dual, std::nullopt};
}

Graph adjacency_family_member(const Matrix& p, const Vec& gamma) {
  if (p.rows() != p.cols() || p.rows() < 1) throw input_error("transition matrix must be square");
  const int n = p.rows();
  check_length(gamma, n, "gamma");
  for (size_t i = 0; i < gamma.size(); ++i)
    if (!(gamma[i] > 0.0) || !std::isfinite(gamma[i]))
      throw input_error("gamma entry at vertex " + std::to_string(i) + " must be positive");
  for (int u = 0; u < n; ++u) {
    double row = 0.0;
    for (int v = 0; v < n; ++v) {
      if (p(u, v) < 0.0) throw input_error("transition matrix has a negative entry");
      row += p(u, v);
    }
    if (std::abs(row - 1.0) > 1e-10)
      throw input_error("row " + std::to_string(u) + " of the transition matrix sums to " +
                        std::to_string(row) + ", not 1");
  }
  Matrix a(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) a(u, v) = gamma[u] * p(u, v);
  return Graph::from_weights(std::move(a), /*directed=*/true);
}

DualBasis basis_unify(const Graph& g, const Vec& replicate, double rho) {
  if (rho < 0.0 || rho > 1.0) throw input_error("basis parameter rho must lie in [0,1]");
  const int n = g.size();
  check_replicate(replicate, n);
  const ShiftOperator p = random_walk_operator(g);
  Matrix aprime(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) aprime(u, v) = replicate[u] * p.matrix(u, v);
  Graph dual = Graph::from_weights(std::move(aprime), /*directed=*/true);

  // Z' = D' collapses D'^{-1}Z' to the identity; evaluate the conjugation
  // anyway so the returned filter is the formula, not the simplification.
  const Vec dprime = dual.out_degrees();
  Vec lhs(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    const double ratio = dprime[i] / dprime[i];
    lhs[i] = std::pow(ratio, 1.0 - rho);
    rhs[i] = std::pow(ratio, rho);
  }
  Matrix filter(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) filter(u, v) = lhs[u] * dual.weights()(u, v) * rhs[v];
  return {std::move(dual), std::move(filter)};
}

NonnegativeDecomposition decompose_nonnegative(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() < 1) throw input_error("filter matrix must be square");
  const int n = h.rows();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (h(u, v) < 0.0 || !std::isfinite(h(u, v)))
        throw input_error("filter entry (" + std::to_string(u) + "," + std::to_string(v) +
                          ") is negative or non-finite");
  Vec z(n, 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) z[u] += h(u, v);
    if (!(z[u] > 0.0))
      throw input_error("row " + std::to_string(u) +
                        " of the filter is zero; no random-walk interpretation");
  }
  return {Graph::from_weights(h, /*directed=*/true), std::move(z)};
}

ZLaplacian z_laplacian(const Graph& g, const Vec& replicate, const Vec& delay) {
  const int n = g.size();
  check_replicate(replicate, n);
  check_delays(delay, n, DelayFloor::Positive);
  const Vec d = checked_out_degrees(g);
  Matrix l(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u || g.weights()(u, v) == 0.0) continue;
      // off-diagonals assembled by sign so the Z-matrix property is exact
      l(u, v) = -(replicate[u] * (g.weights()(u, v) / d[u]) / delay[u]);
    }
    l(u, u) = (1.0 - replicate[u] * (g.weights()(u, u) / d[u])) / delay[u];
  }
  return {std::move(l), g, replicate, delay};
}

ZMatrixDecomposition decompose_z_matrix(const Matrix& l) {
  if (l.rows() != l.cols() || l.rows() < 1) throw input_error("Z-matrix must be square");
  const int n = l.rows();
  double max_abs_diag = 0.0;
  bool unit_feasible = true;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (!std::isfinite(l(u, v))) throw input_error("Z-matrix has a non-finite entry");
      if (u != v && l(u, v) > 0.0)
        throw input_error("positive off-diagonal entry (" + std::to_string(u) + "," +
                          std::to_string(v) + "): not a Z-matrix");
    }
    max_abs_diag = std::max(max_abs_diag, std::abs(l(u, u)));
    if (l(u, u) < 0.0 || 1.0 - l(u, u) < 0.0) unit_feasible = false;
  }
  const double delta = unit_feasible ? 1.0 : 1.0 / max_abs_diag;

  Matrix a(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v)
      if (l(u, v) != 0.0) a(u, v) = -delta * l(u, v);
    a(u, u) = 1.0 - delta * l(u, u);
  }
  Vec z(n, 0.0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) z[u] += a(u, v);
    if (!(z[u] > 0.0))
      throw input_error("row " + std::to_string(u) + " of I - delta L is zero; " +
                        "the Z-matrix has no graph realization at this delta");
  }
  return {Graph::from_weights(std::move(a), /*directed=*/true), std::move(z), delta};
}

}  // namespace zlap
