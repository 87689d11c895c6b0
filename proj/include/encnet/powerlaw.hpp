#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "encnet/types.hpp"

namespace encnet {

/// Empirical complementary CDF: P(X >= x) at each distinct sample value.
struct Ccdf {
  std::vector<std::pair<double, double>> points;  // (x, P(X >= x)), x ascending
};

enum class FitMethod { ccdf_ls, mle };

inline const char* to_string(FitMethod m) { return m == FitMethod::ccdf_ls ? "ccdf_ls" : "mle"; }

/// Fitted tail exponent. alpha_minus_1 is the Pareto/CCDF exponent (the
/// convention the toolkit reports first); alpha = alpha_minus_1 + 1 is the
/// density exponent. fit_quality is the R^2 of the log-log CCDF regression
/// over the tail, reported for both methods as a fit diagnostic.
struct PowerLawFit {
  double alpha_minus_1 = 0.0;
  double alpha = 0.0;
  double xmin = 0.0;
  FitMethod method = FitMethod::ccdf_ls;
  double fit_quality = 0.0;
  std::int64_t n_tail = 0;
};

inline Ccdf ccdf(const std::vector<double>& samples) {
  if (samples.empty()) throw argument_error("ccdf: empty sample");
  std::vector<double> v = samples;
  std::sort(v.begin(), v.end());
  if (v.front() <= 0.0) throw argument_error("ccdf: samples must be positive");

  Ccdf out;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    out.points.push_back({v[i], static_cast<double>(v.size() - i) / n});
    i = j + 1;
  }
  return out;
}

namespace detail {

struct LogLogRegression {
  double slope = 0.0;
  double r_squared = 0.0;
};

inline LogLogRegression regress_ccdf(const Ccdf& c) {
  const std::size_t n = c.points.size();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, p] : c.points) {
    mx += std::log(x);
    my += std::log(p);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& [x, p] : c.points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(p) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  LogLogRegression r;
  r.slope = sxy / sxx;
  const double ss_res = syy - sxy * sxy / sxx;
  r.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return r;
}

}  // namespace detail

/// Fits the power-law tail over samples >= xmin (default: the smallest
/// positive sample).
///
/// ccdf_ls: alpha_minus_1 is minus the least-squares slope of
/// log P(X >= x) against log x. mle: the continuous Hill estimator,
/// alpha = 1 + n / sum(ln(x_i / xmin)). Requires at least 10 tail points
/// that are not all equal.
inline PowerLawFit fit(const std::vector<double>& samples, std::optional<double> xmin,
                       FitMethod method) {
  if (xmin && !(*xmin > 0.0)) throw argument_error("fit: xmin must be positive");

  double lo = 0.0;
  if (xmin) {
    lo = *xmin;
  } else {
    for (double s : samples)
      if (s > 0.0 && (lo == 0.0 || s < lo)) lo = s;
    if (lo == 0.0) throw fit_error("fit: no positive samples");
  }

  std::vector<double> tail;
  tail.reserve(samples.size());
  for (double s : samples)
    if (s >= lo) tail.push_back(s);

  if (tail.size() < 10)
    throw fit_error("fit: too few tail points (" + std::to_string(tail.size()) +
                    " >= xmin, need 10)");
  const auto [mn, mx] = std::minmax_element(tail.begin(), tail.end());
  if (*mn == *mx) throw fit_error("fit: all tail samples equal");

  const detail::LogLogRegression reg = detail::regress_ccdf(ccdf(tail));

  PowerLawFit f;
  f.xmin = lo;
  f.method = method;
  f.n_tail = static_cast<std::int64_t>(tail.size());
  f.fit_quality = reg.r_squared;
  if (method == FitMethod::ccdf_ls) {
    f.alpha_minus_1 = -reg.slope;
  } else {
    double log_sum = 0.0;
    for (double s : tail) log_sum += std::log(s / lo);
    f.alpha_minus_1 = static_cast<double>(tail.size()) / log_sum;
  }
  f.alpha = f.alpha_minus_1 + 1.0;
  return f;
}

}  // namespace encnet
