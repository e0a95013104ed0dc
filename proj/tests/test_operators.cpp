#include "doctest.h"

#include <cmath>
#include <random>

#include "support.hpp"
#include "zlap/error.hpp"
#include "zlap/operators.hpp"
#include "zlap/spectral.hpp"

using namespace zlap;
using namespace zlap::testing;

namespace {

Matrix identity_minus(const Matrix& p) {
  Matrix m = Matrix::identity(p.rows()) - p;
  return m;
}

double row_sum(const Matrix& m, int i) {
  double s = 0.0;
  for (int j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}

double col_sum(const Matrix& m, int j) {
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i) s += m(i, j);
  return s;
}

}  // namespace

TEST_CASE("random walk operator on P3") {
  const ShiftOperator p = random_walk_operator(path(3));
  const Matrix expect = [] {
    Matrix m(3, 3);
    m(0, 1) = 1.0;
    m(1, 0) = 0.5;
    m(1, 2) = 0.5;
    m(2, 1) = 1.0;
    return m;
  }();
  CHECK(max_abs_diff(p.matrix, expect) == 0.0);
  CHECK(p.recipe == Recipe::RandomWalk);
}

TEST_CASE("random walk on K3 and zero-degree rejection") {
  const ShiftOperator p = random_walk_operator(complete(3));
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(p.matrix(u, v) == (u == v ? 0.0 : 0.5));

  // star with an isolated extra vertex
  Graph lonely(5, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}, false);
  CHECK_THROWS_AS(random_walk_operator(lonely), input_error);
}

TEST_CASE("consensus operator") {
  const ShiftOperator c = consensus_operator(path(3));
  for (int j = 0; j < 3; ++j) CHECK(col_sum(c.matrix, j) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.matrix(0, 1) == 0.5);

  const Graph k3 = complete(3);
  CHECK(max_abs_diff(consensus_operator(k3).matrix, transpose(random_walk_operator(k3).matrix)) ==
        0.0);

  const Graph one_way(2, {{0, 1, 1.0}}, true);
  CHECK_THROWS_AS(consensus_operator(one_way), input_error);
}

TEST_CASE("bias transform") {
  const Graph w = bias_transform(complete(3), {1.0, 2.0, 1.0});
  CHECK(w.weight(0, 1) == 2.0);
  CHECK(w.weight(0, 2) == 1.0);
  CHECK(w.weight(1, 2) == 2.0);
  CHECK_FALSE(w.directed());

  const Graph k3 = complete(3);
  CHECK(max_abs_diff(bias_transform(k3, ones(3)).weights(), k3.weights()) == 0.0);

  const Graph cyc(2, {{0, 1, 1.0}, {1, 0, 1.0}}, true);
  const Graph wd = bias_transform(cyc, {2.0, 5.0});
  CHECK(wd.weight(0, 1) == 5.0);
  CHECK(wd.weight(1, 0) == 2.0);

  CHECK_THROWS_AS(bias_transform(k3, {1.0, 0.0, 1.0}), input_error);
}

TEST_CASE("delay transform") {
  const Graph p3 = path(3);
  const Graph w = delay_transform(p3, {2.0, 1.0, 1.0});
  CHECK(w.weight(0, 0) == 1.0);
  CHECK(w.weight(1, 1) == 0.0);
  CHECK(w.weight(0, 1) == 1.0);

  CHECK(max_abs_diff(delay_transform(p3, ones(3)).weights(), p3.weights()) == 0.0);

  const Graph wd = delay_transform(p3, {1.0, 2.0, 1.0});  // T = D
  CHECK(wd.weight(1, 1) == 2.0);
  CHECK(p3.total_traffic() == 4.0);
  CHECK(wd.total_traffic() == 6.0);

  CHECK_THROWS_AS(delay_transform(p3, {0.5, 1.0, 1.0}), input_error);
}

TEST_CASE("parameterized laplacian") {
  const Graph p3 = path(3);
  const ZLaplacian plain = parameterized_laplacian(p3, ones(3), ones(3));
  const Matrix expect = identity_minus(random_walk_operator(p3).matrix);
  CHECK(max_abs_diff(plain.matrix, expect) < 1e-15);
  for (int i = 0; i < 3; ++i) CHECK(row_sum(plain.matrix, i) == doctest::Approx(0.0).epsilon(1e-14));

  const ZLaplacian delayed = parameterized_laplacian(p3, ones(3), {2.0, 1.0, 1.0});
  CHECK(delayed.matrix(0, 0) == 0.5);
  CHECK(delayed.matrix(0, 1) == -0.5);
  CHECK(delayed.matrix(0, 2) == 0.0);
}

TEST_CASE("z-matrix sign condition holds exactly for constructed laplacians") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Graph g = random_connected(rng, n, 0.4);
    const Vec b = random_positive(rng, n, 0.2, 3.0);
    const Vec tau = random_positive(rng, n, 1.0, 4.0);
    const Vec z = random_positive(rng, n, 0.2, 3.0);
    const ZLaplacian biased = parameterized_laplacian(g, b, tau);
    const ZLaplacian replicated = z_laplacian(g, z, tau);
    for (const ZLaplacian* l : {&biased, &replicated}) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) CHECK(l->matrix(i, j) <= 0.0);
    }
  }
}

TEST_CASE("perron eigenpair") {
  const PerronPair k3 = perron_eigenpair(complete(3));
  CHECK(k3.value == doctest::Approx(2.0).epsilon(1e-11));
  for (double v : k3.vector) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));

  // bipartite path still converges to the Perron value
  CHECK(perron_eigenpair(path(3)).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK(perron_eigenpair(star(3)).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-11));

  CHECK_THROWS_AS(perron_eigenpair(Graph(3, {{0, 1, 1.0}}, false)), input_error);
}

TEST_CASE("replicator operator") {
  const ShiftOperator k3 = replicator_operator(complete(3));
  CHECK(max_abs_diff(k3.matrix, 0.5 * complete(3).weights()) < 1e-11);
  CHECK(k3.recipe == Recipe::Replicator);
  CHECK(k3.rho == 0.5);

  const ShiftOperator p3 = replicator_operator(path(3));
  CHECK(max_abs_diff(p3.matrix, (1.0 / std::sqrt(2.0)) * path(3).weights()) < 1e-11);

  CHECK_THROWS_AS(replicator_operator(Graph(2, {{0, 1, 1.0}}, true)), input_error);
}

TEST_CASE("replicator walk basis is row-stochastic and conjugates to A/lambda") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const Graph g = random_connected(rng, n, 0.5);
    const Matrix pw = replicator_walk_basis(g);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(row_sum(pw, i) - 1.0) < 1e-10);
      for (int j = 0; j < n; ++j) CHECK(pw(i, j) >= 0.0);
    }
    // V_A (I - P_W) V_A^{-1} = I - A/lambda_max
    const PerronPair perron = perron_eigenpair(g);
    const Matrix lhs =
        scale_cols(scale_rows(perron.vector, identity_minus(pw)), [&] {
          Vec inv(perron.vector.size());
          for (size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / perron.vector[i];
          return inv;
        }());
    const Matrix rhs = identity_minus((1.0 / perron.value) * g.weights());
    CHECK(max_abs_diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("similarity transform bases") {
  const Graph p3 = path(3);
  const ZLaplacian walk = similarity_transform(p3, ones(3), 0.0);
  CHECK(max_abs_diff(walk.matrix, identity_minus(random_walk_operator(p3).matrix)) < 1e-15);

  const ZLaplacian sym = similarity_transform(p3, ones(3), 0.5);
  const Vec evals = sym_eig(sym.matrix).eigenvalues;
  CHECK(evals[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(evals[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evals[2] == doctest::Approx(2.0).epsilon(1e-12));

  const ZLaplacian con = similarity_transform(p3, ones(3), 1.0);
  CHECK(max_abs_diff(con.matrix, identity_minus(consensus_operator(p3).matrix)) < 1e-15);

  CHECK_THROWS_AS(similarity_transform(Graph(2, {{0, 1, 1.0}}, true), ones(2), 0.5), input_error);
  CHECK_THROWS_AS(similarity_transform(p3, ones(3), 1.5), input_error);
}

TEST_CASE("similarity transform spectra are basis independent") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 12);
    const Graph g = random_connected(rng, n, 0.4);
    const Vec tau = random_positive(rng, n, 1.0, 3.0);
    const Vec reference = real_eigenvalues(similarity_transform(g, tau, 0.5).matrix);
    for (double rho : {0.0, 0.25, 0.75, 1.0}) {
      const Vec other = real_eigenvalues(similarity_transform(g, tau, rho).matrix);
      CHECK(max_abs_diff(reference, other) < 1e-9);
    }
  }
}

TEST_CASE("sis filter") {
  const Graph k3 = complete(3);
  const ShiftOperator h = sis_filter(k3, 0.6, 0.5);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(h.matrix(u, v) == (u == v ? 0.5 : 0.6));
  CHECK(power_method_nonnegative(h.matrix).value == doctest::Approx(1.7).epsilon(1e-10));

  CHECK(max_abs(sis_filter(k3, 0.0, 1.0).matrix) == 0.0);
  CHECK(power_method_nonnegative(sis_filter(k3, 0.25, 0.5).matrix).value ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(sis_filter(k3, 1.5, 0.5), input_error);
  CHECK_THROWS_AS(sis_filter(k3, 0.5, -0.1), input_error);
}

TEST_CASE("nonnegative filter") {
  const Graph p3 = path(3);
  CHECK(max_abs_diff(nonnegative_filter(p3, ones(3)).matrix,
                     random_walk_operator(p3).matrix) == 0.0);

  const ShiftOperator h = nonnegative_filter(p3, {2.0, 1.0, 1.0});
  CHECK(h.matrix(0, 0) == 0.0);
  CHECK(h.matrix(0, 1) == 2.0);
  CHECK(h.matrix(0, 2) == 0.0);

  const Vec d = p3.out_degrees();
  CHECK(max_abs_diff(nonnegative_filter(p3, d).matrix, p3.weights()) < 1e-15);
}

TEST_CASE("uniform replication has spectral radius z") {
  std::mt19937_64 rng(41);
  for (double z : {0.5, 1.0, 1.7, 3.0}) {
    const Graph g = random_connected(rng, 8, 0.4);
    const ShiftOperator h = nonnegative_filter(g, Vec(8, z));
    CHECK(power_method_nonnegative(h.matrix).value == doctest::Approx(z).epsilon(1e-9));
  }
}

TEST_CASE("dual consensus filter") {
  const Graph p3 = path(3);
  CHECK(max_abs_diff(dual_consensus_filter(p3, ones(3)).matrix,
                     consensus_operator(p3).matrix) == 0.0);

  const ShiftOperator h = dual_consensus_filter(p3, {1.0, 3.0, 1.0});
  CHECK(h.matrix(0, 1) == 1.5);
  CHECK(h.matrix(2, 1) == 1.5);
  CHECK(h.matrix(1, 0) == 1.0);

  // Z = D makes the dual equal the random-walk form, i.e. A itself
  std::mt19937_64 rng(43);
  const Graph g = random_connected(rng, 7, 0.5);
  const Vec d = g.out_degrees();
  CHECK(max_abs_diff(dual_consensus_filter(g, d).matrix, nonnegative_filter(g, d).matrix) <
        1e-15);
  CHECK(max_abs_diff(dual_consensus_filter(g, d).matrix, g.weights()) < 1e-15);
}

TEST_CASE("adjacency family member") {
  Matrix perm(2, 2);
  perm(0, 1) = 1.0;
  perm(1, 0) = 1.0;
  const Graph a = adjacency_family_member(perm, {2.0, 5.0});
  CHECK(a.weight(0, 1) == 2.0);
  CHECK(a.weight(1, 0) == 5.0);

  const Graph same = adjacency_family_member(perm, {1.0, 1.0});
  CHECK(max_abs_diff(same.weights(), perm) == 0.0);

  Matrix bad(2, 2);
  bad(0, 0) = 0.7;
  bad(1, 1) = 1.0;
  CHECK_THROWS_AS(adjacency_family_member(bad, {1.0, 1.0}), input_error);
}

TEST_CASE("adjacency family round trip recovers the transition matrix") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const Graph g = random_directed(rng, n, 0.4);
    const Matrix p = random_walk_operator(g).matrix;
    const Vec gamma = random_positive(rng, n, 0.3, 4.0);
    const Matrix back = random_walk_operator(adjacency_family_member(p, gamma)).matrix;
    CHECK(max_abs_diff(back, p) < 1e-12);
  }
}

TEST_CASE("basis unification") {
  const Graph cyc(2, {{0, 1, 1.0}, {1, 0, 1.0}}, true);
  const DualBasis dual = basis_unify(cyc, {2.0, 3.0}, 0.5);
  CHECK(dual.graph.weight(0, 1) == 2.0);
  CHECK(dual.graph.weight(1, 0) == 3.0);

  const DualBasis at0 = basis_unify(cyc, {2.0, 3.0}, 0.0);
  const DualBasis at1 = basis_unify(cyc, {2.0, 3.0}, 1.0);
  CHECK(max_abs_diff(at0.filter, at1.filter) == 0.0);

  const DualBasis plain = basis_unify(cyc, ones(2), 0.5);
  CHECK(max_abs_diff(plain.graph.weights(), random_walk_operator(cyc).matrix) == 0.0);
}

TEST_CASE("basis unification reproduces the primal filter at every rho") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Graph g = random_directed(rng, n, 0.5);
    const Vec z = random_positive(rng, n, 0.2, 3.0);
    const Matrix primal = nonnegative_filter(g, z).matrix;
    for (double rho : {0.0, 0.3, 0.5, 1.0}) {
      const DualBasis dual = basis_unify(g, z, rho);
      CHECK(max_abs_diff(dual.filter, primal) < 1e-12);
    }
  }
}

TEST_CASE("nonnegative decomposition") {
  Matrix h(2, 2);
  h(0, 1) = 2.0;
  h(1, 0) = 3.0;
  h(1, 1) = 1.0;
  const NonnegativeDecomposition dec = decompose_nonnegative(h);
  CHECK(dec.replicate == Vec{2.0, 4.0});
  const Matrix p = random_walk_operator(dec.graph).matrix;
  CHECK(p(0, 1) == 1.0);
  CHECK(p(1, 0) == 0.75);
  CHECK(p(1, 1) == 0.25);
  CHECK(max_abs_diff(nonnegative_filter(dec.graph, dec.replicate).matrix, h) < 1e-15);

  // row-stochastic input decomposes with unit replication
  const NonnegativeDecomposition stoch = decompose_nonnegative(p);
  for (double z : stoch.replicate) CHECK(std::abs(z - 1.0) < 1e-12);

  Matrix zero_row(2, 2);
  zero_row(1, 0) = 1.0;
  CHECK_THROWS_AS(decompose_nonnegative(zero_row), input_error);
}

TEST_CASE("z laplacian") {
  const Graph p3 = path(3);
  CHECK(max_abs_diff(z_laplacian(p3, ones(3), ones(3)).matrix,
                     identity_minus(random_walk_operator(p3).matrix)) < 1e-15);

  const ZLaplacian l = z_laplacian(p3, {2.0, 1.0, 1.0}, ones(3));
  CHECK(l.matrix(0, 0) == 1.0);
  CHECK(l.matrix(0, 1) == -2.0);
  CHECK(l.matrix(0, 2) == 0.0);

  const Graph loop(1, {{0, 0, 1.0}}, false);
  CHECK(z_laplacian(loop, ones(1), ones(1)).matrix(0, 0) == 0.0);
}

TEST_CASE("z laplacian row sums vanish for conservative processes") {
  std::mt19937_64 rng(59);
  const Graph g = random_connected(rng, 9, 0.4);
  const ZLaplacian l = z_laplacian(g, ones(9), random_positive(rng, 9, 0.5, 2.0));
  for (int i = 0; i < 9; ++i) CHECK(std::abs(row_sum(l.matrix, i)) < 1e-12);
}

TEST_CASE("z-matrix decomposition") {
  Matrix l1(2, 2);
  l1(0, 0) = 1.0;
  l1(0, 1) = -2.0;
  l1(1, 0) = -3.0;
  const ZMatrixDecomposition d1 = decompose_z_matrix(l1);
  CHECK(d1.delta == 1.0);
  CHECK(d1.graph.weight(0, 1) == 2.0);
  CHECK(d1.graph.weight(1, 0) == 3.0);
  CHECK(d1.graph.weight(1, 1) == 1.0);
  CHECK(d1.replicate == Vec{2.0, 4.0});

  Matrix l2(2, 2);
  l2(0, 1) = -1.0;
  l2(1, 0) = -1.0;
  const ZMatrixDecomposition d2 = decompose_z_matrix(l2);
  CHECK(d2.delta == 1.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(d2.graph.weight(i, j) == 1.0);
  CHECK(d2.replicate == Vec{2.0, 2.0});

  Matrix fixed(1, 1);
  const ZMatrixDecomposition d3 = decompose_z_matrix(fixed);
  CHECK(d3.graph.weight(0, 0) == 1.0);
  CHECK(d3.replicate == Vec{1.0});

  Matrix not_z(2, 2);
  not_z(0, 1) = 0.5;
  not_z(1, 0) = -1.0;
  CHECK_THROWS_AS(decompose_z_matrix(not_z), input_error);
}

TEST_CASE("decomposition round trips reconstruct random inputs") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 19);

    // nonnegative filters
    Matrix h = random_nonnegative(rng, n, 0.4);
    for (int i = 0; i < n; ++i) h(i, i) += 0.1;  // keep rows nonzero
    const NonnegativeDecomposition nd = decompose_nonnegative(h);
    CHECK(max_abs_diff(nonnegative_filter(nd.graph, nd.replicate).matrix, h) < 1e-12);

    // Z-matrices with mixed diagonal signs
    Matrix l(n, n);
    std::uniform_real_distribution<double> offdiag(0.0, 2.0);
    std::uniform_real_distribution<double> diag(-3.0, 3.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        if (i != j) l(i, j) = -offdiag(rng);
      l(i, i) = diag(rng);
    }
    const ZMatrixDecomposition zd = decompose_z_matrix(l);
    const Matrix back = z_laplacian(zd.graph, zd.replicate, Vec(n, zd.delta)).matrix;
    CHECK(max_abs_diff(back, l) < 1e-12);
  }
}

TEST_CASE("recipe invariants hold on random graphs") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const bool directed = trial % 2 == 0;
    const Graph g = directed ? random_directed(rng, n, 0.4) : random_connected(rng, n, 0.4);

    const Matrix walk = random_walk_operator(g).matrix;
    const Matrix con = consensus_operator(g).matrix;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(row_sum(walk, i) - 1.0) < 1e-12);
      CHECK(std::abs(col_sum(con, i) - 1.0) < 1e-12);
      for (int j = 0; j < n; ++j) {
        CHECK(walk(i, j) >= 0.0);
        CHECK(con(i, j) >= 0.0);
      }
    }
    const Matrix h = nonnegative_filter(g, random_positive(rng, n, 0.1, 3.0)).matrix;
    for (double v : h.data()) CHECK(v >= 0.0);
  }
}

TEST_CASE("bias transform reproduces the biased transition law") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8;
    const bool directed = trial % 2 == 0;
    const Graph g = directed ? random_directed(rng, n, 0.4) : random_connected(rng, n, 0.4);
    const Vec b = random_positive(rng, n, 0.2, 4.0);
    const Matrix p = random_walk_operator(bias_transform(g, b)).matrix;
    for (int u = 0; u < n; ++u) {
      double norm = 0.0;
      for (int v = 0; v < n; ++v) norm += b[v] * g.weights()(u, v);
      for (int v = 0; v < n; ++v)
        CHECK(std::abs(p(u, v) - b[v] * g.weights()(u, v) / norm) < 1e-12);
    }
  }
}

TEST_CASE("delayed laplacian equals the walk laplacian of the transformed graph") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const Graph g = random_connected(rng, n, 0.4);
    const Vec tau = random_positive(rng, n, 1.0, 4.0);
    const Matrix delayed = parameterized_laplacian(g, ones(n), tau).matrix;
    const Graph w = delay_transform(g, tau);
    const Matrix absorbed = z_laplacian(w, ones(n), ones(n)).matrix;
    CHECK(max_abs_diff(delayed, absorbed) < 1e-12);
  }
}
