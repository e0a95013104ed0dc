#pragma once

#include <optional>
#include <vector>

#include "zlap/operators.hpp"

namespace zlap {

// Row signal with its time stamp (step counter in discrete mode).
struct Signal {
  Vec values;
  double time = 0.0;
};

enum class GrowthClass { Expanding, Conservative, Shrinking };
const char* growth_name(GrowthClass c);

struct EvolutionReport {
  std::vector<Signal> trajectory;  // times strictly increasing
  GrowthClass classification = GrowthClass::Conservative;
  double growth = 1.0;  // dominant-eigenvalue estimate from the late trajectory
};

// theta(n+1) = theta(n) H, every step recorded.
EvolutionReport evolve_discrete(const Signal& theta0, const ShiftOperator& h, int steps);

// theta0 (h_0 I + h_1 S + ... + h_l S^l), Horner on the vector.
Signal apply_polynomial_filter(const Signal& theta0, const ShiftOperator& s, const Vec& coeffs);

// Phi = I - delta L; requires delta <= 1/max|L_ii| so Phi stays nonnegative.
ShiftOperator discrete_approximation(const ZLaplacian& l, double delta);

// theta(t) = theta0 e^{-L t} by uniformization: Poisson-weighted powers of
// Phi = I - (1/lambda) L with lambda = max|L_ii| (floor 1), truncated once
// the cumulative Poisson mass reaches 1 - epsilon and renormalized. An
// explicit rate >= max|L_ii| may be supplied.
Signal evolve_continuous(const Signal& theta0, const ZLaplacian& l, double t,
                         double epsilon = 1e-12, std::optional<double> rate = std::nullopt);

// e^{M t} by scaling-and-squaring over a truncated Taylor series. Kept free
// of the uniformization path so the two can check each other.
Matrix matrix_exp_oracle(const Matrix& m, double t);

// Expected waiting steps tau_v / min_i tau_i of the discrete approximation.
Vec waiting_steps(const Vec& delay);

enum class EpidemicClass { Supercritical, Critical, Subcritical };
const char* epidemic_name(EpidemicClass c);

struct EpidemicReport {
  EpidemicClass classification = EpidemicClass::Critical;
  double lambda_max = 0.0;
  double threshold = 0.0;         // 1 / lambda_max
  double transmissibility = 0.0;  // mu / beta
  // present when a replicating factor z is supplied
  std::optional<double> generalized_threshold;         // z / ((z + beta - 1) lambda_max)
  std::optional<double> generalized_transmissibility;  // z / (lambda_max beta)
};

// Compares mu/beta against the epidemic threshold 1/lambda_max(A).
EpidemicReport classify_epidemic(const Graph& g, double mu, double beta,
                                 std::optional<double> z = std::nullopt);

}  // namespace zlap
