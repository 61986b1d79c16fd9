// Copyright 2026 The sandmine authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Binomial logistic regression fitted by iteratively reweighted least
// squares, with Wald inference. Small dense designs only.

#ifndef SANDMINE_LOGISTIC_HPP
#define SANDMINE_LOGISTIC_HPP

#include <string>
#include <vector>

namespace sandmine {

struct RegressionFit {
  std::vector<std::string> names;  // design columns, intercept first
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> p_values;              // Wald, two-sided
  std::vector<double> ci_low, ci_high;       // estimate +/- 1.96 * SE
  double log_likelihood = 0;
  double aic = 0;                            // 2k - 2*loglik
  int n_obs = 0;
  int iterations = 0;
  bool converged = false;
  bool separation_warning = false;  // estimates diverge; no finite MLE
};

/// Fits P(y=1) = sigmoid(x . beta) by IRLS until the gradient max-norm
/// drops below 1e-8 or 100 iterations pass. A constant outcome or diverging
/// estimates set separation_warning instead of converging. Throws naming
/// the offending column when the design is singular.
RegressionFit fit_logistic_matrix(const std::vector<std::vector<double>>& design,
                                  const std::vector<int>& outcomes,
                                  const std::vector<std::string>& names);

double normal_cdf(double x);

}  // namespace sandmine

#endif  // SANDMINE_LOGISTIC_HPP
