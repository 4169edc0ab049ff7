#include "wikitrend/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wikitrend/error.hpp"

namespace wikitrend {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("series lengths differ (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw InputError("need at least 2 values, got " + std::to_string(x.size()));
}

Step step_of(double from, double to) {
  double d = to - from;
  if (d > 0) return Step::up;
  if (d < 0) return Step::down;
  return Step::flat;
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double mean(std::span<const double> x) {
  double sum = 0;
  for (double v : x) sum += v;
  double m = sum / static_cast<double>(x.size());
  // second pass removes the rounding left in the first
  double residual = 0;
  for (double v : x) residual += v - m;
  return m + residual / static_cast<double>(x.size());
}

}  // namespace

SignDelta sign_delta(std::span<const double> x) {
  if (x.size() < 2) throw InputError("sign delta needs at least 2 values, got " + std::to_string(x.size()));
  SignDelta out;
  out.reserve(x.size() - 1);
  for (std::size_t t = 1; t < x.size(); ++t) out.push_back(step_of(x[t - 1], x[t]));
  return out;
}

double udcr(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  std::size_t agree = 0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    if (step_of(x[t - 1], x[t]) == step_of(y[t - 1], y[t])) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(x.size() - 1);
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (is_constant(x) || is_constant(y)) return std::nullopt;

  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;

  double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  if (std::isnan(r) || std::abs(r) > 1.0 + kPearsonClampTolerance) {
    throw InternalError("pearson coefficient out of range: " + std::to_string(r));
  }
  return std::clamp(r, -1.0, 1.0);
}

MetricResult score_pair(const TimeSeries& x, const TimeSeries& y) {
  auto [a, b] = align(x, y);
  return {a.size(), pearson(a.values(), b.values()), udcr(a.values(), b.values())};
}

}  // namespace wikitrend
