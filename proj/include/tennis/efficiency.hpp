#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tennis/system.hpp"

namespace tennis {

struct BetaPrior {
  double alpha = 1.0;
  double beta = 1.0;
};

void check_prior(const BetaPrior& prior, const char* name);
double beta_pdf(const BetaPrior& prior, double p);

// Composite 20-point Gauss-Legendre on each smooth piece. The value is taken
// at 2*panels and the error estimate is its distance from the value at
// `panels`; exceeding `tolerance` raises NumericalError.
struct QuadratureOptions {
  int panels = 16;
  double tolerance = 1e-5;
  unsigned threads = 0;  // 0: hardware concurrency
};

QuadratureOptions one_param_defaults();
QuadratureOptions two_param_defaults();

struct EfficiencyReport {
  std::string system;
  std::vector<BetaPrior> priors;
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Integral of |2 theta(p) - 1| signed towards the better side:
// (1 - 2 theta) below 1/2 and (2 theta - 1) above it, against the prior.
EfficiencyReport efficiency_one_param(const std::function<double(double)>& curve, const BetaPrior& prior,
                                      const QuadratureOptions& opts = one_param_defaults());

// Same idea over the unit square with the independent product prior; the
// regions pA < pB and pA > pB are integrated separately.
EfficiencyReport efficiency_two_param(const std::function<double(double, double)>& surface,
                                      const BetaPrior& prior_a, const BetaPrior& prior_b,
                                      const QuadratureOptions& opts = two_param_defaults());

EfficiencyReport system_efficiency(const SystemSpec& spec, const BetaPrior& prior_a,
                                   const BetaPrior& prior_b = {});
EfficiencyReport system_efficiency(const SystemSpec& spec, const BetaPrior& prior_a, const BetaPrior& prior_b,
                                   const QuadratureOptions& opts);

}  // namespace tennis
