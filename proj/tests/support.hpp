#pragma once

// Test-only helpers: deterministic random graph generators and a general
// real-matrix eigenvalue oracle. The oracle (Householder Hessenberg
// reduction + Francis double-shift QR) is deliberately independent of the
// library's symmetric Jacobi path so spectra of nonsymmetric operators can
// be cross-checked without assuming the similarity results under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "zlap/graph.hpp"
#include "zlap/matrix.hpp"

namespace zlap::testing {

inline Vec ones(int n) { return Vec(static_cast<size_t>(n), 1.0); }

inline Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, edges, false);
}

inline Graph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, edges, false);
}

inline Graph complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph(n, edges, false);
}

inline Graph star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph(leaves + 1, edges, false);
}

// Two cliques of sizes a and n-a joined by a single bridge edge.
inline Graph dumbbell(int n) {
  const int a = n / 2;
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = i + 1; j < a; ++j) edges.push_back({i, j, 1.0});
  for (int i = a; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  edges.push_back({a - 1, a, 1.0});
  return Graph(n, edges, false);
}

inline Vec random_positive(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(static_cast<size_t>(n));
  for (double& x : v) x = dist(rng);
  return v;
}

// Random spanning tree plus extra edges; weights in [0.5, 2].
inline Graph random_connected(std::mt19937_64& rng, int n, double extra_prob) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.push_back({pick(rng), v, weight(rng)});
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < extra_prob) edges.push_back({u, v, weight(rng)});
  return Graph(n, edges, false);
}

// Directed with every out-degree positive: a weighted ring plus extras.
inline Graph random_directed(std::mt19937_64& rng, int n, double extra_prob) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, weight(rng)});
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng) < extra_prob) edges.push_back({u, v, weight(rng)});
  return Graph(n, edges, true);
}

inline Matrix random_symmetric(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = dist(rng);
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
  }
  return m;
}

inline Matrix random_nonnegative(std::mt19937_64& rng, int n, double zero_prob) {
  std::uniform_real_distribution<double> dist(0.1, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(rng) >= zero_prob) m(i, j) = dist(rng);
  return m;
}

// ---------------------------------------------------------------------------
// General real eigenvalue oracle
// ---------------------------------------------------------------------------

namespace detail {

inline void hessenberg_reduce(Matrix& h) {
  const int n = h.rows();
  for (int k = 0; k + 2 < n; ++k) {
    double nrm = 0.0;
    for (int i = k + 1; i < n; ++i) nrm += h(i, k) * h(i, k);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const double alpha = h(k + 1, k) >= 0.0 ? -nrm : nrm;
    std::vector<double> v(static_cast<size_t>(n - k - 1));
    for (int i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
    v[0] -= alpha;
    double vtv = 0.0;
    for (double x : v) vtv += x * x;
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;
    // left: rows k+1..n-1
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i - k - 1] * h(i, j);
      s *= beta;
      for (int i = k + 1; i < n; ++i) h(i, j) -= v[i - k - 1] * s;
    }
    // right: cols k+1..n-1
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
      s *= beta;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * v[j - k - 1];
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Householder similarity on rows/cols k..k+len-1 zeroing a[1..] against a[0].
inline void bulge_reflect(Matrix& h, int k, const double* a, int len) {
  const int n = h.rows();
  double nrm = 0.0;
  for (int i = 0; i < len; ++i) nrm += a[i] * a[i];
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) return;
  const double alpha = a[0] >= 0.0 ? -nrm : nrm;
  double v[3] = {a[0] - alpha, len > 1 ? a[1] : 0.0, len > 2 ? a[2] : 0.0};
  double vtv = 0.0;
  for (int i = 0; i < len; ++i) vtv += v[i] * v[i];
  if (vtv == 0.0) return;
  const double beta = 2.0 / vtv;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < len; ++i) s += v[i] * h(k + i, j);
    s *= beta;
    for (int i = 0; i < len; ++i) h(k + i, j) -= v[i] * s;
  }
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < len; ++j) s += h(i, k + j) * v[j];
    s *= beta;
    for (int j = 0; j < len; ++j) h(i, k + j) -= s * v[j];
  }
}

}  // namespace detail

// Eigenvalues of a general real square matrix, as complex numbers sorted by
// (real, imag).
inline std::vector<std::complex<double>> general_eigenvalues(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
  const int n = m.rows();
  detail::hessenberg_reduce(m);

  std::vector<std::complex<double>> values;
  values.reserve(static_cast<size_t>(n));
  constexpr double eps = 2.3e-16;
  int q = n - 1;
  int iters = 0;
  while (q >= 0) {
    for (int i = 1; i <= q; ++i)
      if (std::abs(m(i, i - 1)) <= eps * (std::abs(m(i, i)) + std::abs(m(i - 1, i - 1))))
        m(i, i - 1) = 0.0;

    if (q == 0 || m(q, q - 1) == 0.0) {
      values.emplace_back(m(q, q), 0.0);
      --q;
      iters = 0;
      continue;
    }
    if (q == 1 || m(q - 1, q - 2) == 0.0) {
      const double a = m(q - 1, q - 1), b = m(q - 1, q);
      const double c = m(q, q - 1), d = m(q, q);
      const double tr = a + d;
      const double det = a * d - b * c;
      const double disc = 0.25 * tr * tr - det;
      if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        values.emplace_back(0.5 * tr + root, 0.0);
        values.emplace_back(0.5 * tr - root, 0.0);
      } else {
        const double root = std::sqrt(-disc);
        values.emplace_back(0.5 * tr, root);
        values.emplace_back(0.5 * tr, -root);
      }
      q -= 2;
      iters = 0;
      continue;
    }

    int p = q - 1;
    while (p > 0 && m(p, p - 1) != 0.0) --p;

    if (++iters > 60) throw std::runtime_error("QR eigenvalue iteration stalled");
    double s = m(q - 1, q - 1) + m(q, q);
    double t = m(q - 1, q - 1) * m(q, q) - m(q - 1, q) * m(q, q - 1);
    if (iters % 12 == 0) {  // exceptional shift against rare stagnation
      const double w = std::abs(m(q, q - 1)) + std::abs(m(q - 1, q - 2));
      s = 1.5 * w;
      t = w * w;
    }

    double x = m(p, p) * m(p, p) + m(p, p + 1) * m(p + 1, p) - s * m(p, p) + t;
    double y = m(p + 1, p) * (m(p, p) + m(p + 1, p + 1) - s);
    double z = m(p + 2, p + 1) * m(p + 1, p);
    for (int k = p; k <= q - 1; ++k) {
      const int len = k + 2 <= q ? 3 : 2;
      if (k > p) {
        x = m(k, k - 1);
        y = m(k + 1, k - 1);
        z = len == 3 ? m(k + 2, k - 1) : 0.0;
      }
      const double a3[3] = {x, y, z};
      detail::bulge_reflect(m, k, a3, len);
      if (k > p) {
        m(k + 1, k - 1) = 0.0;
        if (len == 3) m(k + 2, k - 1) = 0.0;
      }
    }
  }

  std::sort(values.begin(), values.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  return values;
}

// Real spectrum helper: asserts imaginary parts are negligible.
inline Vec real_eigenvalues(const Matrix& m, double imag_tol = 1e-8) {
  Vec out;
  for (const auto& z : general_eigenvalues(m)) {
    if (std::abs(z.imag()) > imag_tol)
      throw std::runtime_error("unexpected complex eigenvalue in oracle");
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zlap::testing
