#pragma once

#include <vector>

#include "zlap/graph.hpp"
#include "zlap/matrix.hpp"

namespace zlap {

struct SpectralDecomposition {
  Vec eigenvalues;     // ascending
  Matrix eigenvectors; // orthonormal; column k pairs with eigenvalues[k]
};

// Eigen-indices to keep, by ascending-eigenvalue rank.
struct BandMask {
  std::vector<int> keep;  // sorted, unique
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Deterministic: fixed sweep order, eigenpairs sorted ascending, and each
// eigenvector's largest-magnitude entry made positive.
SpectralDecomposition sym_eig(const Matrix& m);

enum class CandidateKind { L0, L1, L2 };
const char* candidate_name(CandidateKind k);

// The three candidate shift operators:
//   L0 = D^{-1/2} (D - A) D^{-1/2}
//   L1 = D_W'^{-1/2} (D_W' - W') D_W'^{-1/2},  W' = D^{-1} A D^{-1}
//   L2 = Z^{1/2} D^{-1/2} (Z^{-1} D - A) D^{-1/2} Z^{1/2}
// replicate is the Z diagonal for L2 (empty means all ones).
Matrix candidate_laplacian(const Graph& g, CandidateKind which, const Vec& replicate = {});

// A' = F (I - V Lambda' V^T) F with F the inverse of the normalization that
// built the Laplacian: F = Z^{-1/2} D^{1/2} for L0/L2 and D_W'^{1/2} for L1,
// so the full-spectrum mask reconstructs the graph the Laplacian normalizes.
Matrix band_reconstruct(const Graph& g, CandidateKind which, const SpectralDecomposition& dec,
                        const BandMask& mask, const Vec& replicate = {});

// Keep the k smallest eigenvalues / everything but the k smallest.
BandMask low_pass_mask(const SpectralDecomposition& dec, int k);
BandMask high_pass_mask(const SpectralDecomposition& dec, int k);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// Ranks all n(n-1)/2 unordered off-diagonal pairs (zero weights included) by
// weight descending, ties by (u,v) lexicographic, and returns the top
// floor(percent/100 * pairs).
std::vector<WeightedEdge> top_percent_edges(const Matrix& a, double percent);

}  // namespace zlap
