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

#include "logistic.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace sandmine {

namespace {

constexpr double kGradientTol = 1e-8;
constexpr int kMaxIterations = 100;
// Past this magnitude a coefficient is numerically a separation artifact:
// the odds ratio already exceeds e^30.
constexpr double kDivergenceBound = 30.0;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Cholesky solve of the symmetric positive definite system A x = b.
/// `names` label the columns for the singularity diagnostic; passing
/// `report_singular` false turns a failed pivot into an empty result
/// instead of an error.
bool cholesky_solve(std::vector<std::vector<double>> a,
                    std::vector<std::vector<double>>& rhs,
                    const std::vector<std::string>& names,
                    bool report_singular) {
  const std::size_t p = a.size();
  double scale = 0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  if (scale == 0) scale = 1;

  // In-place LL^T factorization.
  for (std::size_t j = 0; j < p; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
    if (d <= scale * 1e-12) {
      if (report_singular) {
        throw Error(ErrorKind::Analysis,
                    "singular design: column '" + names[j] +
                        "' is collinear with earlier columns");
      }
      return false;
    }
    a[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = a[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i][k] * a[j][k];
      a[i][j] = v / a[j][j];
    }
  }

  for (auto& b : rhs) {
    // Forward then back substitution.
    for (std::size_t i = 0; i < p; ++i) {
      double v = b[i];
      for (std::size_t k = 0; k < i; ++k) v -= a[i][k] * b[k];
      b[i] = v / a[i][i];
    }
    for (std::size_t ii = p; ii-- > 0;) {
      double v = b[ii];
      for (std::size_t k = ii + 1; k < p; ++k) v -= a[k][ii] * b[k];
      b[ii] = v / a[ii][ii];
    }
  }
  return true;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

RegressionFit fit_logistic_matrix(const std::vector<std::vector<double>>& design,
                                  const std::vector<int>& outcomes,
                                  const std::vector<std::string>& names) {
  const std::size_t n = design.size();
  const std::size_t p = names.size();
  if (n == 0 || n != outcomes.size()) {
    throw Error(ErrorKind::InvalidArgument, "empty or mismatched observations");
  }
  for (const auto& row : design) {
    if (row.size() != p) {
      throw Error(ErrorKind::InvalidArgument, "design row width mismatch");
    }
  }

  RegressionFit fit;
  fit.names = names;
  fit.n_obs = static_cast<int>(n);
  fit.coefficients.assign(p, 0.0);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto fill_nan = [&] {
    fit.std_errors.assign(p, nan);
    fit.p_values.assign(p, nan);
    fit.ci_low.assign(p, nan);
    fit.ci_high.assign(p, nan);
    fit.aic = nan;
    fit.log_likelihood = nan;
  };

  bool any0 = false, any1 = false;
  for (int y : outcomes) (y ? any1 : any0) = true;
  if (!any0 || !any1) {
    // The likelihood increases without bound; there is no finite MLE.
    fit.separation_warning = true;
    fit.coefficients.assign(p, nan);
    fill_nan();
    return fit;
  }

  std::vector<double> mu(n), eta(n);
  auto recompute_mu = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double x = 0;
      for (std::size_t j = 0; j < p; ++j) x += design[i][j] * fit.coefficients[j];
      eta[i] = x;
      mu[i] = sigmoid(x);
    }
  };

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    recompute_mu();

    std::vector<double> gradient(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double r = outcomes[i] - mu[i];
      for (std::size_t j = 0; j < p; ++j) gradient[j] += design[i][j] * r;
    }
    double gmax = 0;
    for (double g : gradient) gmax = std::max(gmax, std::fabs(g));
    if (gmax <= kGradientTol) {
      fit.converged = true;
      break;
    }

    std::vector<std::vector<double>> xtwx(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      double w = mu[i] * (1.0 - mu[i]);
      for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = j; k < p; ++k) {
          xtwx[j][k] += w * design[i][j] * design[i][k];
        }
      }
    }
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < j; ++k) xtwx[j][k] = xtwx[k][j];
    }

    std::vector<std::vector<double>> step{gradient};
    // Only the first Newton step can prove the design itself is rank
    // deficient; later pivot failures mean the weights collapsed, which is
    // separation, not collinearity.
    if (!cholesky_solve(xtwx, step, names, /*report_singular=*/iter == 0)) {
      fit.separation_warning = true;
      break;
    }
    for (std::size_t j = 0; j < p; ++j) fit.coefficients[j] += step[0][j];
    fit.iterations = iter + 1;

    double bmax = 0;
    for (double b : fit.coefficients) bmax = std::max(bmax, std::fabs(b));
    if (bmax > kDivergenceBound) {
      fit.separation_warning = true;
      break;
    }
  }
  if (!fit.converged && !fit.separation_warning) {
    // Ran out of iterations while the gradient kept shrinking slowly; with
    // a bounded design this is a separation symptom as well.
    fit.separation_warning = true;
  }
  if (!fit.separation_warning) {
    // The gradient can vanish before the coefficients hit the divergence
    // bound when some fitted probabilities reach 0 or 1 numerically; that
    // is separation too, the estimates are boundary artifacts.
    recompute_mu();
    for (double m : mu) {
      if (m < 1e-8 || m > 1.0 - 1e-8) {
        fit.separation_warning = true;
        fit.converged = false;
        break;
      }
    }
  }
  if (fit.separation_warning) {
    fill_nan();
    return fit;
  }

  recompute_mu();
  fit.log_likelihood = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::min(std::max(mu[i], 1e-15), 1.0 - 1e-15);
    fit.log_likelihood += outcomes[i] ? std::log(m) : std::log1p(-m);
  }
  fit.aic = 2.0 * static_cast<double>(p) - 2.0 * fit.log_likelihood;

  std::vector<std::vector<double>> xtwx(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double w = mu[i] * (1.0 - mu[i]);
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = j; k < p; ++k) {
        xtwx[j][k] += w * design[i][j] * design[i][k];
      }
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < j; ++k) xtwx[j][k] = xtwx[k][j];
  }
  std::vector<std::vector<double>> unit(p, std::vector<double>(p, 0.0));
  for (std::size_t j = 0; j < p; ++j) unit[j][j] = 1.0;
  cholesky_solve(xtwx, unit, names, /*report_singular=*/true);

  fit.std_errors.resize(p);
  fit.p_values.resize(p);
  fit.ci_low.resize(p);
  fit.ci_high.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    fit.std_errors[j] = std::sqrt(unit[j][j]);
    double z = fit.coefficients[j] / fit.std_errors[j];
    fit.p_values[j] = 2.0 * (1.0 - normal_cdf(std::fabs(z)));
    fit.ci_low[j] = fit.coefficients[j] - 1.96 * fit.std_errors[j];
    fit.ci_high[j] = fit.coefficients[j] + 1.96 * fit.std_errors[j];
  }
  return fit;
}

}  // namespace sandmine
