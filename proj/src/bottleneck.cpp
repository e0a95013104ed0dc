#include "zlap/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "zlap/error.hpp"
#include "zlap/spectral.hpp"

namespace zlap {

const char* cut_method_name(CutMethod m) {
  return m == CutMethod::Brute ? "brute" : "sweep";
}

CutMethod cut_method_from_name(const std::string& name) {
  if (name == "brute") return CutMethod::Brute;
  if (name == "sweep") return CutMethod::Sweep;
  throw input_error("unknown cut method '" + name + "' (expected brute or sweep)");
}

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Base: return "base";
    case Protocol::RandomAccess: return "random_access";
    case Protocol::TdmaSaturated: return "tdma_saturated";
    case Protocol::TdmaMatched: return "tdma_matched";
  }
  return "base";
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "base") return Protocol::Base;
  if (name == "random_access") return Protocol::RandomAccess;
  if (name == "tdma_saturated") return Protocol::TdmaSaturated;
  if (name == "tdma_matched") return Protocol::TdmaMatched;
  throw input_error("unknown protocol '" + name + "'");
}

namespace {

// Evaluates one bipartition given membership flags; exact, O(n^2).
CutResult evaluate_cut(const Graph& g, const std::vector<char>& in_s) {
  const int n = g.size();
  CutResult r;
  for (int i = 0; i < n; ++i) {
    double deg = 0.0;
    for (int j = 0; j < n; ++j) {
      deg += g.weights()(i, j);
      if (in_s[i] && !in_s[j]) r.cut += g.weights()(i, j) + g.weights()(j, i);
    }
    if (in_s[i])
      r.vol_s += deg;
    else
      r.vol_rest += deg;
  }
  r.conductance = r.cut / std::min(r.vol_s, r.vol_rest);
  for (int i = 0; i < n; ++i)
    if (in_s[i]) r.subset.push_back(i);
  return r;
}

// Canonical reported side: fewer vertices, ties to the side holding vertex 0.
std::vector<char> canonical_side(const std::vector<char>& in_s) {
  const int n = static_cast<int>(in_s.size());
  int size_s = 0;
  for (char c : in_s) size_s += c;
  const bool flip =
      size_s * 2 > n || (size_s * 2 == n && !in_s[0]);
  if (!flip) return in_s;
  std::vector<char> out(in_s.size());
  for (size_t i = 0; i < in_s.size(); ++i) out[i] = !in_s[i];
  return out;
}

// Lexicographic order on sorted vertex lists: the earliest vertex not shared
// by both sets decides.
bool lex_less(const std::vector<char>& a, const std::vector<char>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i];
  return false;
}

struct BestTracker {
  bool has = false;
  CutResult result;
  std::vector<char> side;

  void offer(const Graph& g, const std::vector<char>& in_s, double phi_estimate) {
    // Cheap reject on the running estimate; near-best candidates get an
    // exact re-evaluation so incremental drift cannot decide the winner.
    if (has) {
      const double margin = 1e-6 * std::max(1.0, std::abs(result.conductance)) + 1e-12;
      if (phi_estimate > result.conductance + margin) return;
    }
    std::vector<char> side_c = canonical_side(in_s);
    CutResult exact = evaluate_cut(g, side_c);
    if (has) {
      if (exact.conductance > result.conductance) return;
      if (exact.conductance == result.conductance) {
        const size_t old_size = result.subset.size();
        if (exact.subset.size() > old_size) return;
        if (exact.subset.size() == old_size && !lex_less(side_c, side)) return;
      }
    }
    has = true;
    result = std::move(exact);
    side = std::move(side_c);
  }
};

CutResult min_conductance_brute(const Graph& g) {
  const int n = g.size();
  if (n > 24) throw input_error("brute-force bottleneck search is limited to n <= 24");
  const Vec deg = g.out_degrees();
  const double total = g.total_traffic();

  // Gray-code walk over subsets of {1..n-1}; vertex 0 stays on the S side.
  std::vector<char> in_s(n, 0);
  in_s[0] = 1;
  double vol_s = deg[0];
  double cut = 0.0;
  for (int j = 1; j < n; ++j) cut += g.weights()(0, j) + g.weights()(j, 0);

  BestTracker best;
  best.offer(g, in_s, cut / std::min(vol_s, total - vol_s));

  const std::uint32_t limit = 1u << (n - 1);
  std::uint32_t gray = 0;
  for (std::uint32_t k = 1; k < limit; ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const int x = 1 + __builtin_ctz(gray ^ next);  // flipped vertex
    gray = next;
    const bool entering = in_s[x] == 0;
    in_s[x] = entering ? 1 : 0;
    for (int j = 0; j < n; ++j) {
      if (j == x) continue;
      const double both = g.weights()(x, j) + g.weights()(j, x);
      if (both == 0.0) continue;
      const bool j_in = in_s[j];
      if (entering)
        cut += j_in ? -both : both;
      else
        cut += j_in ? both : -both;
    }
    vol_s += entering ? deg[x] : -deg[x];
    if (gray == limit - 1) continue;  // S = V is not a bipartition
    best.offer(g, in_s, cut / std::min(vol_s, total - vol_s));
  }
  return best.result;
}

CutResult min_conductance_sweep(const Graph& g) {
  const int n = g.size();
  const Matrix lsym = similarity_transform(g, Vec(n, 1.0), 0.5).matrix;
  const SpectralDecomposition dec = sym_eig(lsym);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&dec](int a, int b) {
    return dec.eigenvectors(a, 1) < dec.eigenvectors(b, 1);
  });

  const Vec deg = g.out_degrees();
  const double total = g.total_traffic();
  std::vector<char> in_s(n, 0);
  double vol_s = 0.0;
  double cut = 0.0;
  BestTracker best;
  for (int k = 0; k < n - 1; ++k) {
    const int x = order[k];
    for (int j = 0; j < n; ++j) {
      if (j == x) continue;
      const double both = g.weights()(x, j) + g.weights()(j, x);
      if (both == 0.0) continue;
      cut += in_s[j] ? -both : both;
    }
    in_s[x] = 1;
    vol_s += deg[x];
    best.offer(g, in_s, cut / std::min(vol_s, total - vol_s));
  }
  return best.result;
}

}  // namespace

CutResult conductance(const Graph& w, const std::vector<int>& subset) {
  const int n = w.size();
  if (subset.empty()) throw input_error("subset must be nonempty");
  std::vector<char> in_s(n, 0);
  for (int u : subset) {
    if (u < 0 || u >= n) throw input_error("subset vertex " + std::to_string(u) + " out of range");
    if (in_s[u]) throw input_error("subset lists vertex " + std::to_string(u) + " twice");
    in_s[u] = 1;
  }
  if (static_cast<int>(subset.size()) == n)
    throw input_error("subset must be a proper subset of the vertices");
  return evaluate_cut(w, in_s);
}

CutResult min_conductance(const Graph& w, CutMethod method) {
  if (w.size() < 2) throw input_error("bottleneck search needs at least two vertices");
  if (!w.connected()) throw input_error("bottleneck search requires a connected graph");
  return method == CutMethod::Brute ? min_conductance_brute(w) : min_conductance_sweep(w);
}

ProtocolModel protocol_model(const Graph& g, Protocol protocol) {
  if (g.directed()) throw input_error("protocol models require an undirected graph");
  const int n = g.size();
  const Vec d = checked_out_degrees(g);
  const Vec ones(n, 1.0);

  switch (protocol) {
    case Protocol::Base: {
      ZLaplacian l = z_laplacian(g, ones, ones);
      return {protocol, g, ones, std::move(l), g.total_traffic()};
    }
    case Protocol::RandomAccess: {
      Graph w = delay_transform(g, d);
      ZLaplacian l = z_laplacian(g, ones, d);
      const double traffic = w.total_traffic();
      return {protocol, std::move(w), d, std::move(l), traffic};
    }
    case Protocol::TdmaSaturated: {
      Vec inv_d(n);
      for (int i = 0; i < n; ++i) inv_d[i] = 1.0 / d[i];
      Graph wprime = bias_transform(g, inv_d);
      const Vec dprime = checked_out_degrees(wprime);
      Vec tau(n);  // per-vertex traffic conservation: d_i(W) = d_i(A)
      for (int i = 0; i < n; ++i) tau[i] = d[i] / dprime[i];
      Graph w = delay_transform(wprime, tau);
      ZLaplacian l = z_laplacian(wprime, ones, tau);
      const double traffic = w.total_traffic();
      return {protocol, std::move(w), std::move(tau), std::move(l), traffic};
    }
    case Protocol::TdmaMatched: {
      Vec inv_d(n);
      for (int i = 0; i < n; ++i) inv_d[i] = 1.0 / d[i];
      Graph wprime = bias_transform(g, inv_d);
      ZLaplacian l = z_laplacian(wprime, ones, ones);
      const double traffic = wprime.total_traffic();
      return {protocol, std::move(wprime), ones, std::move(l), traffic};
    }
  }
  throw input_error("unknown protocol");
}

std::vector<HealOutcome> heal_rank(const Graph& g, Protocol protocol,
                                   const std::vector<std::pair<int, int>>& candidates,
                                   double bandwidth, bool delay_update, CutMethod method) {
  if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth))
    throw input_error("bandwidth must be finite and >= 0");
  const ProtocolModel base = protocol_model(g, protocol);

  std::vector<HealOutcome> outcomes;
  outcomes.reserve(candidates.size());
  for (const auto& [u, v] : candidates) {
    Graph w = delay_update ? protocol_model(g.with_edge(u, v, bandwidth), protocol).transformed
                           : base.transformed.with_edge(u, v, bandwidth);
    CutResult r = min_conductance(w, method);
    outcomes.push_back({u, v, r.conductance, std::move(r)});
  }
  std::sort(outcomes.begin(), outcomes.end(), [](const HealOutcome& a, const HealOutcome& b) {
    if (a.phi_star != b.phi_star) return a.phi_star > b.phi_star;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return outcomes;
}

}  // namespace zlap
