#include "wikitrend/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <unordered_map>

#include "wikitrend/error.hpp"
#include "wikitrend/metrics.hpp"

namespace wikitrend {

namespace {

struct MeanAccumulator {
  double pearson_sum = 0;
  std::size_t pearson_count = 0;
  double udcr_sum = 0;
  std::size_t rows = 0;
  std::size_t undefined = 0;

  void add(const KeywordReport& r) {
    ++rows;
    udcr_sum += r.udcr;
    if (r.pearson) {
      pearson_sum += *r.pearson;
      ++pearson_count;
    } else {
      ++undefined;
    }
  }
  std::optional<double> mean_pearson() const {
    if (pearson_count == 0) return std::nullopt;
    return pearson_sum / static_cast<double>(pearson_count);
  }
  std::optional<double> mean_udcr() const {
    if (rows == 0) return std::nullopt;
    return udcr_sum / static_cast<double>(rows);
  }
};

std::size_t bucket_count(std::size_t max_rank, std::size_t bucket_size) {
  return (max_rank + bucket_size - 1) / bucket_size;
}

void check_bucket_size(std::size_t bucket_size) {
  if (bucket_size == 0) throw InputError("bucket size must be at least 1");
}

}  // namespace

std::vector<RankedKeyword> rank_keywords(const SeriesMap& views) {
  if (views.empty()) throw EmptyResultError("no keyword series to rank");
  std::vector<RankedKeyword> ranked;
  ranked.reserve(views.size());
  for (const auto& [keyword, series] : views) {
    ranked.push_back({keyword, 0, series.total(), series.total() / series.days_covered()});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedKeyword& a, const RankedKeyword& b) {
    if (a.total_views != b.total_views) return a.total_views > b.total_views;
    return a.keyword < b.keyword;
  });
  for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = i + 1;
  return ranked;
}

Correlation correlate_all(std::span<const std::string> keywords, const SeriesMap& views,
                          const SeriesMap& trends, std::span<const RankedKeyword> ranking,
                          Resolution resolution, unsigned jobs) {
  std::unordered_map<std::string_view, const RankedKeyword*> rank_of;
  for (const auto& r : ranking) rank_of.emplace(r.keyword, &r);

  auto check_resolution = [&](const std::string& keyword, const TimeSeries& s, const char* what) {
    if (s.resolution() != resolution) {
      throw InputError(std::string(what) + " series for '" + keyword + "' is " +
                       std::string(to_string(s.resolution())) + ", expected " +
                       std::string(to_string(resolution)));
    }
  };

  struct Job {
    const std::string* keyword;
    const TimeSeries* views;
    const TimeSeries* trend;
    const RankedKeyword* rank;
  };
  Correlation out;
  std::vector<Job> work;
  for (const auto& keyword : keywords) {
    auto v = views.find(keyword);
    if (v == views.end()) {
      ++out.skips.no_views;
      continue;
    }
    check_resolution(keyword, v->second, "views");
    auto t = trends.find(keyword);
    if (t == trends.end()) {
      ++out.skips.no_reference;
      continue;
    }
    check_resolution(keyword, t->second, "reference");
    auto r = rank_of.find(keyword);
    if (r == rank_of.end()) throw InputError("keyword '" + keyword + "' has no access rank");
    work.push_back({&keyword, &v->second, &t->second, r->second});
  }

  std::vector<std::optional<KeywordReport>> rows(work.size());
  std::vector<std::exception_ptr> failures(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      const auto& job = work[i];
      MetricResult m;
      try {
        m = score_pair(*job.views, *job.trend);
      } catch (const AlignmentError&) {
        continue;
      } catch (...) {
        failures[i] = std::current_exception();
        continue;
      }
      rows[i] = KeywordReport{*job.keyword,
                              job.rank->rank,
                              job.rank->total_views,
                              job.views->total() / job.views->days_covered(),
                              m.n,
                              m.pearson,
                              m.udcr,
                              resolution};
    }
  };
  {
    const auto n = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(work.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (auto& row : rows) {
    if (!row) {
      ++out.skips.no_overlap;
      continue;
    }
    if (!row->pearson) ++out.undefined_pearson;
    out.reports.push_back(std::move(*row));
  }
  if (out.reports.empty()) throw EmptyResultError("zero resulting rows");
  std::sort(out.reports.begin(), out.reports.end(),
            [](const KeywordReport& a, const KeywordReport& b) { return a.access_rank < b.access_rank; });
  return out;
}

std::vector<BucketSummary> bucket_report(std::span<const KeywordReport> reports, std::size_t bucket_size,
                                         std::size_t ranked_total, std::span<const std::size_t> coverage) {
  check_bucket_size(bucket_size);
  if (reports.empty()) throw EmptyResultError("no keyword reports to bucket");

  std::size_t max_rank = ranked_total;
  for (const auto& r : reports) {
    if (r.access_rank == 0) throw InputError("report for '" + r.keyword + "' has no rank");
    max_rank = std::max(max_rank, r.access_rank);
  }
  const std::size_t buckets = std::max(bucket_count(max_rank, bucket_size), coverage.size());

  std::vector<MeanAccumulator> acc(buckets);
  for (const auto& r : reports) acc[(r.access_rank - 1) / bucket_size].add(r);

  std::vector<BucketSummary> out;
  out.reserve(buckets);
  for (std::size_t b = 0; b < buckets; ++b) {
    BucketSummary s;
    s.rank_lo = b * bucket_size + 1;
    s.rank_hi = std::min((b + 1) * bucket_size, std::max(max_rank, s.rank_lo));
    s.keyword_count = acc[b].rows;
    s.trend_data_count = b < coverage.size() ? coverage[b] : acc[b].rows;
    s.mean_pearson = acc[b].mean_pearson();
    s.mean_udcr = acc[b].mean_udcr();
    s.excluded_undefined_count = acc[b].undefined;
    out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> coverage_report(std::span<const RankedKeyword> ranking, const SeriesMap& trends,
                                         std::size_t bucket_size) {
  check_bucket_size(bucket_size);
  std::size_t max_rank = 0;
  for (const auto& r : ranking) max_rank = std::max(max_rank, r.rank);
  std::vector<std::size_t> counts(bucket_count(max_rank, bucket_size), 0);
  for (const auto& r : ranking) {
    if (trends.contains(r.keyword)) ++counts[(r.rank - 1) / bucket_size];
  }
  return counts;
}

ThresholdSummary threshold_report(std::span<const KeywordReport> reports, double min_mean_daily_views) {
  ThresholdSummary out;
  out.threshold = min_mean_daily_views;
  MeanAccumulator acc;
  for (const auto& r : reports) {
    if (!(r.mean_daily_views > min_mean_daily_views)) continue;
    acc.add(r);
    out.boundary_rank = std::max(out.boundary_rank, r.access_rank);
  }
  out.count = acc.rows;
  out.empty = acc.rows == 0;
  out.mean_pearson = acc.mean_pearson();
  out.mean_udcr = acc.mean_udcr();
  out.excluded_undefined_count = acc.undefined;
  return out;
}

}  // namespace wikitrend
