#include "qcaembed/fit.hpp"

#include "json.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qcaembed {

double FitResult::param(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return params[i];
  }
  throw std::out_of_range("fit has no parameter '" + name + "'");
}

std::vector<SuccessBin> bin_outcomes(const std::vector<SizeOutcome>& outcomes, int width) {
  if (width < 1) throw std::invalid_argument("bin width must be >= 1");
  std::map<int, SuccessBin> bins;
  std::map<int, double> sums;
  for (const auto& o : outcomes) {
    const int lo = (o.n_cells / width) * width;
    auto& bin = bins[lo];
    bin.lo = lo;
    ++bin.trials;
    bin.successes += o.success ? 1 : 0;
    sums[lo] += o.n_cells;
  }
  std::vector<SuccessBin> out;
  for (auto& [lo, bin] : bins) {
    bin.center = sums[lo] / bin.trials;
    out.push_back(bin);
  }
  return out;
}

double erfc_model(double n, double mu, double delta) { return 0.5 * std::erfc((n - mu) / delta); }

namespace {

using Residuals = std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& jac)>;

struct Solved {
  Eigen::VectorXd params;
  Eigen::VectorXd stderrs;
  double rss = 0.0;
};

// Levenberg-Marquardt; the covariance is s^2 (J^T J)^-1 at the solution.
Solved levenberg_marquardt(const Residuals& f, Eigen::VectorXd p, int points,
                           const std::function<bool(const Eigen::VectorXd&)>& admissible) {
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  f(p, r, jac);
  double rss = r.squaredNorm();
  double lambda = 1e-3;
  for (int iter = 0; iter < 500; ++iter) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;
    Eigen::MatrixXd a = jtj;
    a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::VectorXd step = a.ldlt().solve(-g);
    const Eigen::VectorXd trial = p + step;
    bool improved = false;
    if (admissible(trial)) {
      Eigen::VectorXd r2;
      Eigen::MatrixXd j2;
      f(trial, r2, j2);
      const double rss2 = r2.squaredNorm();
      if (rss2 <= rss) {
        const double drop = rss - rss2;
        p = trial;
        r = r2;
        jac = j2;
        rss = rss2;
        lambda = std::max(lambda / 3, 1e-12);
        improved = true;
        if (drop <= 1e-15 * std::max(1.0, rss) && step.norm() <= 1e-12 * (1.0 + p.norm())) break;
      }
    }
    if (!improved) {
      lambda *= 4;
      if (lambda > 1e12) break;
    }
  }
  Solved out;
  out.params = p;
  out.rss = rss;
  const int dof = std::max(1, points - static_cast<int>(p.size()));
  const Eigen::MatrixXd cov = (jac.transpose() * jac).inverse() * (rss / dof);
  out.stderrs = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  return out;
}

struct Line {
  double intercept, slope, se_intercept, se_slope, rss;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double sw = std::sqrt(w[i]);
    a(i, 0) = sw;
    a(i, 1) = sw * x[i];
    b[i] = sw * y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  const double rss = (a * c - b).squaredNorm();
  Line line{c[0], c[1], 0.0, 0.0, rss};
  if (n > 2) {
    const Eigen::MatrixXd cov = (a.transpose() * a).inverse() * (rss / (n - 2));
    line.se_intercept = std::sqrt(std::max(0.0, cov(0, 0)));
    line.se_slope = std::sqrt(std::max(0.0, cov(1, 1)));
  }
  return line;
}

} // namespace

FitResult fit_erfc(const std::vector<SuccessBin>& bins) {
  std::vector<SuccessBin> used;
  for (const auto& b : bins) {
    if (b.trials > 0) used.push_back(b);
  }
  if (used.size() < 3) throw std::invalid_argument("erfc fit needs at least 3 non-empty bins");
  int succ = 0, total = 0;
  for (const auto& b : used) {
    succ += b.successes;
    total += b.trials;
  }
  if (succ == 0 || succ == total) throw std::invalid_argument("erfc fit needs both successes and failures");

  // Probit start: erfc^-1(2p) = (N - mu) / delta is linear in N.
  std::vector<double> x, z, w;
  for (const auto& b : used) {
    const double p = std::clamp(b.rate(), 0.02, 0.98);
    x.push_back(b.center);
    z.push_back(boost::math::erfc_inv(2.0 * p));
    w.push_back(b.trials);
  }
  const Line line = fit_line(x, z, w);
  Eigen::VectorXd p0(2);
  if (line.slope > 1e-9) {
    p0 << -line.intercept / line.slope, 1.0 / line.slope;
  } else {
    // Rates do not fall with size; start from the spread of the data.
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    p0 << 0.5 * (*lo + *hi), std::max(1.0, 0.25 * (*hi - *lo));
  }

  const int n = static_cast<int>(used.size());
  Residuals f = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    r.resize(n);
    jac.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      const double sw = std::sqrt(static_cast<double>(used[i].trials));
      const double t = (used[i].center - p[0]) / p[1];
      const double g = std::exp(-t * t) / (std::sqrt(std::numbers::pi) * p[1]);
      r[i] = sw * (erfc_model(used[i].center, p[0], p[1]) - used[i].rate());
      jac(i, 0) = sw * g;
      jac(i, 1) = sw * g * t;
    }
  };
  auto solved = levenberg_marquardt(f, p0, n, [](const Eigen::VectorXd& p) { return p[1] > 1e-9; });
  FitResult out;
  out.model = "erfc";
  out.names = {"mu", "delta"};
  out.params = {solved.params[0], solved.params[1]};
  out.stderrs = {solved.stderrs[0], solved.stderrs[1]};
  out.residual_norm = std::sqrt(solved.rss);
  out.points = n;
  return out;
}

FitResult fit_power(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("power fit needs equally many x and y values");
  if (xs.size() < 3) throw std::invalid_argument("power fit needs at least 3 points");
  std::vector<double> lx, ly, w(xs.size(), 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) throw std::invalid_argument("power fit needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const Line line = fit_line(lx, ly, w);
  FitResult out;
  out.model = "power";
  out.names = {"A", "b"};
  const double a = std::exp(line.intercept);
  out.params = {a, line.slope};
  out.stderrs = {a * line.se_intercept, line.se_slope};
  out.residual_norm = std::sqrt(line.rss);
  out.points = static_cast<int>(xs.size());
  out.error_method = "log-log least squares covariance";
  return out;
}

FitResult fit_yield(const std::vector<double>& n_dis, const std::vector<double>& mu) {
  if (n_dis.size() != mu.size()) throw std::invalid_argument("yield fit needs equally many n_dis and mu values");
  std::set<double> distinct(n_dis.begin(), n_dis.end());
  if (distinct.size() < 3 || !distinct.count(0.0)) {
    throw std::invalid_argument("yield fit needs at least 3 distinct n_dis values including 0");
  }
  double mu0 = 0.0;
  int zeros = 0;
  for (std::size_t i = 0; i < n_dis.size(); ++i) {
    if (n_dis[i] < 0.0 || n_dis[i] > 1.0) throw std::invalid_argument("n_dis must lie in [0, 1]");
    if (n_dis[i] == 0.0) {
      mu0 += mu[i];
      ++zeros;
    }
  }
  mu0 /= zeros;
  if (!(mu0 > 0.0)) throw std::invalid_argument("yield fit needs mu_0 > 0");

  std::vector<double> x, y;
  for (std::size_t i = 0; i < n_dis.size(); ++i) {
    if (n_dis[i] > 0.0) {
      x.push_back(n_dis[i]);
      y.push_back(mu[i]);
    }
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double drop = 1.0 - y[i] / mu0;
    if (drop > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(drop));
    }
  }
  Eigen::VectorXd p0(2);
  if (lx.size() >= 2) {
    const Line line = fit_line(lx, ly, std::vector<double>(lx.size(), 1.0));
    p0 << std::exp(line.intercept), std::max(0.05, line.slope);
  } else {
    p0 << 1.0, 1.0;
  }
  const int n = static_cast<int>(x.size());
  Residuals f = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
    r.resize(n);
    jac.resize(n, 2);
    for (int i = 0; i < n; ++i) {
      const double pw = std::pow(x[i], p[1]);
      r[i] = mu0 * (1.0 - p[0] * pw) - y[i];
      jac(i, 0) = -mu0 * pw;
      jac(i, 1) = -mu0 * p[0] * pw * std::log(x[i]);
    }
  };
  auto solved = levenberg_marquardt(f, p0, n, [](const Eigen::VectorXd& p) { return p[1] > 0.0; });
  FitResult out;
  out.model = "yield";
  out.names = {"alpha", "beta", "mu0"};
  out.params = {solved.params[0], solved.params[1], mu0};
  out.stderrs = {solved.stderrs[0], solved.stderrs[1], 0.0};
  out.residual_norm = std::sqrt(solved.rss);
  out.points = static_cast<int>(n_dis.size());
  return out;
}

std::string fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json doc;
  doc["model"] = fit.model;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json errs = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    params[fit.names[i]] = fit.params[i];
    errs[fit.names[i]] = fit.stderrs[i];
  }
  doc["params"] = std::move(params);
  doc["stderr"] = std::move(errs);
  doc["residual_norm"] = fit.residual_norm;
  doc["points"] = fit.points;
  doc["error_method"] = fit.error_method;
  return doc.dump(2) + "\n";
}

} // namespace qcaembed
