#include "zlap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "zlap/error.hpp"
#include "zlap/operators.hpp"

namespace zlap {

const char* candidate_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::L0: return "L0";
    case CandidateKind::L1: return "L1";
    case CandidateKind::L2: return "L2";
  }
  return "L0";
}

static double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

static double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

SpectralDecomposition sym_eig(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw input_error("matrix must be square");
  const int n = m.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) >= 1e-10)
        throw input_error("matrix is not symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");

  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = m(i, i);
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  }
  Matrix v = Matrix::identity(n);

  const double target = 1e-12 * frobenius(m);
  bool converged = off_diagonal_mass(a) <= target;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (theta >= 0.0)
          t = 1.0 / (theta + std::sqrt(theta * theta + 1.0));
        else
          t = -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          const double ajp = a(j, p);
          const double ajq = a(j, q);
          a(j, p) = a(p, j) = c * ajp - s * ajq;
          a(j, q) = a(q, j) = s * ajp + c * ajq;
        }
        for (int j = 0; j < n; ++j) {
          const double vjp = v(j, p);
          const double vjq = v(j, q);
          v(j, p) = c * vjp - s * vjq;
          v(j, q) = s * vjp + c * vjq;
        }
      }
    }
    converged = off_diagonal_mass(a) <= target;
  }
  if (!converged) throw numerical_error("Jacobi sweeps did not converge within 100 passes");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int x, int y) { return a(x, x) < a(y, y); });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.eigenvectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    dec.eigenvalues[k] = a(src, src);
    int peak = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(v(j, src)) > std::abs(v(peak, src))) peak = j;
    const double flip = v(peak, src) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) dec.eigenvectors(j, k) = flip * v(j, src);
  }
  return dec;
}

namespace {

struct LaplacianPieces {
  Vec scale;  // F^{-1} diagonal: the Laplacian is diag(scale)(diag(shift)-A)diag(scale)
  Vec shift;  // inner diagonal
  Matrix adjacency;  // the graph the Laplacian normalizes (A or W')
};

LaplacianPieces laplacian_pieces(const Graph& g, CandidateKind which, const Vec& replicate) {
  if (g.directed()) throw input_error("candidate Laplacians require an undirected graph");
  const int n = g.size();
  const Vec d = checked_out_degrees(g);
  Vec z = replicate;
  if (z.empty()) z.assign(n, 1.0);
  if (which == CandidateKind::L2) check_replicate(z, n);

  LaplacianPieces pieces;
  switch (which) {
    case CandidateKind::L0:
    case CandidateKind::L2: {
      pieces.scale.resize(n);
      pieces.shift.resize(n);
      for (int i = 0; i < n; ++i) {
        pieces.scale[i] = std::sqrt(z[i]) / std::sqrt(d[i]);
        pieces.shift[i] = d[i] / z[i];
      }
      pieces.adjacency = g.weights();
      break;
    }
    case CandidateKind::L1: {
      // W' = D^{-1} A D^{-1}, normalized by its own degrees
      Matrix w(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) w(i, j) = w(j, i) = g.weights()(i, j) / (d[i] * d[j]);
      Vec dw(n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dw[i] += w(i, j);
      pieces.scale.resize(n);
      pieces.shift = dw;
      for (int i = 0; i < n; ++i) pieces.scale[i] = 1.0 / std::sqrt(dw[i]);
      pieces.adjacency = std::move(w);
      break;
    }
  }
  return pieces;
}

}  // namespace

Matrix candidate_laplacian(const Graph& g, CandidateKind which, const Vec& replicate) {
  const LaplacianPieces p = laplacian_pieces(g, which, replicate);
  const int n = g.size();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    l(i, i) = p.scale[i] * (p.shift[i] - p.adjacency(i, i)) * p.scale[i];
    for (int j = i + 1; j < n; ++j) {
      if (p.adjacency(i, j) == 0.0) continue;
      l(i, j) = l(j, i) = -(p.scale[i] * p.adjacency(i, j) * p.scale[j]);
    }
  }
  return l;
}

Matrix band_reconstruct(const Graph& g, CandidateKind which, const SpectralDecomposition& dec,
                        const BandMask& mask, const Vec& replicate) {
  const int n = g.size();
  if (static_cast<int>(dec.eigenvalues.size()) != n || dec.eigenvectors.rows() != n)
    throw input_error("decomposition dimension does not match the graph");
  for (int k : mask.keep)
    if (k < 0 || k >= n) throw input_error("band mask index out of range");

  const LaplacianPieces p = laplacian_pieces(g, which, replicate);
  Vec f(n);  // inverse of the Laplacian normalization
  for (int i = 0; i < n; ++i) f[i] = 1.0 / p.scale[i];

  // M = I - V Lambda' V^T over the kept band
  Matrix m = Matrix::identity(n);
  for (int k : mask.keep) {
    const double lam = dec.eigenvalues[k];
    if (lam == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) -= lam * dec.eigenvectors(i, k) * dec.eigenvectors(j, k);
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = f[i] * m(i, i) * f[i];
    for (int j = i + 1; j < n; ++j) out(i, j) = out(j, i) = f[i] * m(i, j) * f[j];
  }
  return out;
}

BandMask low_pass_mask(const SpectralDecomposition& dec, int k) {
  const int n = static_cast<int>(dec.eigenvalues.size());
  if (k < 0 || k > n) throw input_error("band size k must lie in [0, n]");
  BandMask mask;
  mask.keep.resize(k);
  std::iota(mask.keep.begin(), mask.keep.end(), 0);
  return mask;
}

BandMask high_pass_mask(const SpectralDecomposition& dec, int k) {
  const int n = static_cast<int>(dec.eigenvalues.size());
  if (k < 0 || k > n) throw input_error("band size k must lie in [0, n]");
  BandMask mask;
  mask.keep.resize(n - k);
  std::iota(mask.keep.begin(), mask.keep.end(), k);
  return mask;
}

std::vector<WeightedEdge> top_percent_edges(const Matrix& a, double percent) {
  if (a.rows() != a.cols() || a.rows() < 1) throw input_error("matrix must be square");
  if (!(percent > 0.0 && percent <= 100.0)) throw input_error("percent must lie in (0, 100]");
  const int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) >= 1e-10)
        throw input_error("edge ranking requires a symmetric matrix");

  std::vector<WeightedEdge> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v, 0.5 * (a(u, v) + a(v, u))});

  std::sort(pairs.begin(), pairs.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    if (x.w != y.w) return x.w > y.w;
    if (x.u != y.u) return x.u < y.u;
    return x.v < y.v;
  });
  const double total = static_cast<double>(pairs.size());
  const auto count = static_cast<size_t>(std::floor(percent * total / 100.0));
  pairs.resize(count);
  return pairs;
}

}  // namespace zlap
