#include "zlap/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "zlap/error.hpp"

namespace zlap {

const char* growth_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::Expanding: return "expanding";
    case GrowthClass::Conservative: return "conservative";
    case GrowthClass::Shrinking: return "shrinking";
  }
  return "conservative";
}

const char* epidemic_name(EpidemicClass c) {
  switch (c) {
    case EpidemicClass::Supercritical: return "supercritical";
    case EpidemicClass::Critical: return "critical";
    case EpidemicClass::Subcritical: return "subcritical";
  }
  return "critical";
}

static void check_signal(const Signal& s, int n) {
  if (static_cast<int>(s.values.size()) != n)
    throw input_error("signal length does not match operator dimension");
  for (double v : s.values)
    if (!std::isfinite(v)) throw input_error("signal has a non-finite entry");
}

static double max_abs_diagonal(const Matrix& m) {
  double d = 0.0;
  for (int i = 0; i < m.rows(); ++i) d = std::max(d, std::abs(m(i, i)));
  return d;
}

EvolutionReport evolve_discrete(const Signal& theta0, const ShiftOperator& h, int steps) {
  if (steps < 0) throw input_error("step count must be >= 0");
  check_signal(theta0, h.matrix.rows());
  EvolutionReport report;
  report.trajectory.reserve(static_cast<size_t>(steps) + 1);
  report.trajectory.push_back(theta0);
  Signal cur = theta0;
  for (int k = 0; k < steps; ++k) {
    cur.values = cur.values * h.matrix;
    cur.time += 1.0;
    report.trajectory.push_back(cur);
  }
  // Late-step L1 ratio estimates the dominant eigenvalue of the filter.
  if (steps >= 1) {
    const double prev = norm1(report.trajectory[report.trajectory.size() - 2].values);
    const double last = norm1(report.trajectory.back().values);
    report.growth = prev > 0.0 ? last / prev : 0.0;
  }
  if (report.growth > 1.0 + 1e-9)
    report.classification = GrowthClass::Expanding;
  else if (report.growth < 1.0 - 1e-9)
    report.classification = GrowthClass::Shrinking;
  else
    report.classification = GrowthClass::Conservative;
  return report;
}

Signal apply_polynomial_filter(const Signal& theta0, const ShiftOperator& s, const Vec& coeffs) {
  check_signal(theta0, s.matrix.rows());
  if (coeffs.empty()) throw input_error("filter needs at least one coefficient");
  const size_t l = coeffs.size() - 1;
  Vec r(theta0.values.size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeffs[l] * theta0.values[i];
  for (size_t k = l; k-- > 0;) {
    r = r * s.matrix;
    for (size_t i = 0; i < r.size(); ++i) r[i] += coeffs[k] * theta0.values[i];
  }
  return {std::move(r), theta0.time};
}

ShiftOperator discrete_approximation(const ZLaplacian& l, double delta) {
  if (!(delta > 0.0)) throw input_error("step delta must be positive");
  const int n = l.matrix.rows();
  const double bound = max_abs_diagonal(l.matrix);
  if (delta * bound > 1.0 + 1e-12)
    throw input_error("delta " + std::to_string(delta) +
                      " exceeds 1/max|L_ii|; the discrete filter would go negative");
  Matrix phi(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v)
      if (l.matrix(u, v) != 0.0) phi(u, v) = -delta * l.matrix(u, v);
    phi(u, u) = 1.0 - delta * l.matrix(u, u);
  }
  return {std::move(phi), Recipe::Nonnegative, std::nullopt};
}

Signal evolve_continuous(const Signal& theta0, const ZLaplacian& l, double t, double epsilon,
                         std::optional<double> rate) {
  const int n = l.matrix.rows();
  check_signal(theta0, n);
  if (!(t >= 0.0) || !std::isfinite(t)) throw input_error("time must be finite and >= 0");
  if (!(epsilon > 0.0 && epsilon <= 1e-6))
    throw input_error("tail tolerance must lie in (0, 1e-6]");

  const double min_rate = max_abs_diagonal(l.matrix);
  double lambda = min_rate > 0.0 ? min_rate : 1.0;
  if (rate) {
    if (!(*rate >= min_rate) || !(*rate > 0.0))
      throw input_error("uniformization rate must be positive and >= max|L_ii|");
    lambda = *rate;
  }

  const double a = lambda * t;
  if (a == 0.0) return {theta0.values, theta0.time + t};

  Matrix phi(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v)
      if (l.matrix(u, v) != 0.0) phi(u, v) = -l.matrix(u, v) / lambda;
    phi(u, u) = 1.0 - l.matrix(u, u) / lambda;
  }

  // Poisson weights in log space; individual masses near the mode stay
  // representable even when e^{-a} underflows.
  const double log_a = std::log(a);
  Vec acc(n, 0.0);
  Vec v = theta0.values;
  double log_w = -a;
  double cumulative = 0.0;
  constexpr long kMaxTerms = 2000000;
  for (long k = 0;; ++k) {
    if (k > 0) {
      log_w += log_a - std::log(static_cast<double>(k));
      v = v * phi;
    }
    const double w = std::exp(log_w);
    for (int i = 0; i < n; ++i) acc[i] += w * v[i];
    cumulative += w;
    if (cumulative >= 1.0 - epsilon) {
      // Expanding filters (row sums of Phi above 1) grow faster than the
      // Poisson mass decays, so also require the weighted term to be
      // negligible before truncating.
      if (w * norm1(v) <= epsilon * std::max(1.0, norm1(acc))) break;
    }
    if (k >= kMaxTerms)
      throw numerical_error("uniformization did not reach the Poisson mass target");
  }
  for (int i = 0; i < n; ++i) acc[i] /= cumulative;
  return {std::move(acc), theta0.time + t};
}

Matrix matrix_exp_oracle(const Matrix& m, double t) {
  if (m.rows() != m.cols()) throw input_error("matrix exponential needs a square matrix");
  for (double v : m.data())
    if (!std::isfinite(v)) throw input_error("matrix exponential needs finite entries");
  const int n = m.rows();

  Matrix b = t * m;
  int squarings = 0;
  double nrm = inf_norm(b);
  while (nrm > 0.5) {
    nrm /= 2.0;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  b = scale * b;

  Matrix e = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 300; ++k) {
    term = term * b;
    term = (1.0 / k) * term;
    e = e + term;
    if (max_abs(term) < 1e-18) break;
    if (k == 300) throw numerical_error("matrix exponential Taylor series did not settle");
  }
  for (int s = 0; s < squarings; ++s) e = e * e;
  return e;
}

Vec waiting_steps(const Vec& delay) {
  if (delay.empty()) throw input_error("delay vector is empty");
  double dmin = delay[0];
  for (double tau : delay) {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw input_error("delay factors must be positive and finite");
    dmin = std::min(dmin, tau);
  }
  Vec steps(delay.size());
  for (size_t i = 0; i < delay.size(); ++i) steps[i] = delay[i] / dmin;
  return steps;
}

EpidemicReport classify_epidemic(const Graph& g, double mu, double beta,
                                 std::optional<double> z) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw input_error("infecting probability mu must lie in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw input_error("curing probability beta must lie in [0,1]");
  if (z && !(*z > 0.0)) throw input_error("replicating factor z must be positive");

  EpidemicReport report;
  report.lambda_max = perron_eigenpair(g).value;
  report.threshold = 1.0 / report.lambda_max;

  if (beta == 0.0) {
    // no cure: any infection persists
    report.transmissibility = mu > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    report.classification =
        mu > 0.0 ? EpidemicClass::Supercritical : EpidemicClass::Critical;
  } else {
    report.transmissibility = mu / beta;
    const double slack = 1e-9 * std::max(1.0, std::abs(report.threshold));
    if (report.transmissibility > report.threshold + slack)
      report.classification = EpidemicClass::Supercritical;
    else if (report.transmissibility < report.threshold - slack)
      report.classification = EpidemicClass::Subcritical;
    else
      report.classification = EpidemicClass::Critical;
  }

  if (z) {
    report.generalized_threshold = *z / ((*z + beta - 1.0) * report.lambda_max);
    report.generalized_transmissibility =
        beta > 0.0 ? *z / (report.lambda_max * beta) : std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace zlap
