#pragma once

#include <optional>

#include "zlap/graph.hpp"
#include "zlap/matrix.hpp"

namespace zlap {

enum class Recipe { RandomWalk, Consensus, Replicator, Sis, Nonnegative, Dual, Custom };

const char* recipe_name(Recipe r);

// A graph shift: dense matrix acting on row signals, tagged with the recipe
// that built it and, where meaningful, the basis parameter rho.
struct ShiftOperator {
  Matrix matrix;
  Recipe recipe = Recipe::Custom;
  std::optional<double> rho;
};

// T^{-1}(I - Z D_out^{-1} A), kept together with the generating pieces.
// Off-diagonal entries are <= 0 by construction (Z-matrix property).
struct ZLaplacian {
  Matrix matrix;
  Graph graph;
  Vec replicate;  // Z diagonal
  Vec delay;      // T diagonal
};

// Delay factors default to the tau >= 1 normalization; Positive relaxes to
// tau > 0 where only row scaling is involved.
enum class DelayFloor { Unit, Positive };

void check_bias(const Vec& bias, int n);
void check_delays(const Vec& delay, int n, DelayFloor floor);
void check_replicate(const Vec& replicate, int n);

// Out-degrees, rejecting zero rows (these get inverted downstream).
Vec checked_out_degrees(const Graph& g);
Vec checked_in_degrees(const Graph& g);

// P = D_out^{-1} A, row-stochastic.
ShiftOperator random_walk_operator(const Graph& g);

// P_CON = A D_in^{-1}, column-stochastic.
ShiftOperator consensus_operator(const Graph& g);

// Directed: W = A diag(B); undirected: W = diag(B) A diag(B).
Graph bias_transform(const Graph& g, const Vec& bias);

// W = D_out (T - I) + A: per-vertex delays absorbed as self-loops.
Graph delay_transform(const Graph& g, const Vec& delay);

// T^{-1}(I - D_W^{-1} W) on W = bias_transform(g, B).
ZLaplacian parameterized_laplacian(const Graph& g, const Vec& bias, const Vec& delay,
                                   DelayFloor floor = DelayFloor::Unit);

struct PerronPair {
  double value = 0.0;
  Vec vector;  // unit 2-norm, entrywise nonnegative
};

// Dominant eigenpair of a nonnegative matrix by power iteration. Iterates on
// M + I so periodic (e.g. bipartite) structures still converge to the Perron
// pair; the shift leaves the eigenvector unchanged and is subtracted from
// the returned value.
PerronPair power_method_nonnegative(const Matrix& m);

// Perron pair of the adjacency matrix; requires a connected graph.
PerronPair perron_eigenpair(const Graph& g);

// A / lambda_max under the symmetric basis (undirected, connected).
ShiftOperator replicator_operator(const Graph& g);

// The same walk in the random-walk basis, D_W^{-1} V_A A V_A; row-stochastic.
Matrix replicator_walk_basis(const Graph& g);

// (T D_W)^(-1+rho) (D_W - W) (T D_W)^(-rho); rho interpolates random-walk
// (0), symmetric (0.5) and consensus (1) bases without changing the spectrum.
ZLaplacian similarity_transform(const Graph& w, const Vec& delay, double rho);

// H = mu A + (1 - beta) I.
ShiftOperator sis_filter(const Graph& g, double mu, double beta);

// H = diag(Z) D_out^{-1} A: random walk with per-vertex replicating factors.
ShiftOperator nonnegative_filter(const Graph& g, const Vec& replicate);

// H = A D_in^{-1} diag(Z): the consensus-basis dual.
ShiftOperator dual_consensus_filter(const Graph& g, const Vec& replicate);

// A = diag(Gamma) P for a row-stochastic P; random_walk_operator inverts it.
Graph adjacency_family_member(const Matrix& p, const Vec& gamma);

struct DualBasis {
  Graph graph;    // A' = diag(Z) P_A
  Matrix filter;  // (D'^{-1}Z')^(1-rho) A' (D'^{-1}Z')^rho with Z' = D'
};
DualBasis basis_unify(const Graph& g, const Vec& replicate, double rho);

struct NonnegativeDecomposition {
  Graph graph;
  Vec replicate;
};
// H = diag(Z) D_out^{-1} A with A = H and Z the row sums of H.
NonnegativeDecomposition decompose_nonnegative(const Matrix& h);

// T^{-1}(I - diag(Z) D_out^{-1} A), off-diagonals formed by sign.
ZLaplacian z_laplacian(const Graph& g, const Vec& replicate, const Vec& delay);

struct ZMatrixDecomposition {
  Graph graph;
  Vec replicate;
  double delta = 1.0;
};
// Inverts an arbitrary Z-matrix: delta = 1 when I - L is already a valid
// adjacency matrix, else 1/max|L_ii|; then A = I - delta L and Z = row sums.
ZMatrixDecomposition decompose_z_matrix(const Matrix& l);

}  // namespace zlap
