#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wikitrend/timeseries.hpp"

namespace wikitrend {

/// Direction of one step of a series.
enum class Step : std::int8_t { down = -1, flat = 0, up = 1 };

/// Entry t-1 is the direction of x[t] - x[t-1], for t = 1..n-1.
using SignDelta = std::vector<Step>;

/// Throws InputError for fewer than two values.
SignDelta sign_delta(std::span<const double> x);

/// Up/down concordance rate: the share of steps on which both series move the
/// same way. Two flat steps count as agreeing. Requires equal lengths >= 2.
double udcr(std::span<const double> x, std::span<const double> y);

/// Pearson product-moment correlation, or nullopt when either input is constant.
/// Requires equal lengths >= 2 (InputError otherwise). Results drifting past
/// +/-1 by more than kPearsonClampTolerance raise InternalError.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

inline constexpr double kPearsonClampTolerance = 1e-12;

struct MetricResult {
  std::size_t n = 0;
  std::optional<double> pearson;
  double udcr = 0.0;
};

/// Aligns both series to their common span and scores the overlap.
/// Alignment failures propagate as AlignmentError.
MetricResult score_pair(const TimeSeries& x, const TimeSeries& y);

}  // namespace wikitrend
