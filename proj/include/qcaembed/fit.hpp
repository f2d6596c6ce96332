#pragma once

#include <string>
#include <vector>

namespace qcaembed {

struct FitResult {
  std::string model;                 // erfc | power | yield
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> stderrs;       // from the Gauss-Newton covariance
  double residual_norm = 0.0;
  int points = 0;
  std::string error_method = "gauss-newton covariance";

  double param(const std::string& name) const;
};

struct SuccessBin {
  double center = 0.0;  // mean cell count of the bin's trials
  int lo = 0;           // bin covers [lo, lo + width)
  int successes = 0;
  int trials = 0;

  double rate() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

struct SizeOutcome {
  int n_cells = 0;
  bool success = false;
};

std::vector<SuccessBin> bin_outcomes(const std::vector<SizeOutcome>& outcomes, int width = 20);

/// p(N) = erfc((N - mu) / delta) / 2
double erfc_model(double n, double mu, double delta);

/// Weighted least squares on binned success rates (weights: trials per bin),
/// started from a probit-transform line fit. Needs at least 3 bins and both
/// successes and failures overall; throws std::invalid_argument otherwise.
FitResult fit_erfc(const std::vector<SuccessBin>& bins);

/// y = A x^b by least squares in log-log space. Needs >= 3 positive points.
FitResult fit_power(const std::vector<double>& xs, const std::vector<double>& ys);

/// mu(n) = mu_0 (1 - alpha n^beta) with mu_0 the n = 0 value. Needs >= 3
/// distinct n including 0.
FitResult fit_yield(const std::vector<double>& n_dis, const std::vector<double>& mu);

std::string fit_to_json(const FitResult& fit);

} // namespace qcaembed
