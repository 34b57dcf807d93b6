#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "holo/geometry.hpp"
#include "holo/orchestrator.hpp"

namespace holo {

/// Evaluation quantities for one trial. Deviation is XY distance to the
/// closest point of the target path; heading is deliberately ignored.
struct TrialMetrics {
  double mean_deviation = 0.0;  // in
  double max_deviation = 0.0;   // in
  double avg_speed = 0.0;       // in/s
  std::optional<double> time_to_setpoint;  // s; empty on timeout
};

inline double deviation_from_path(const Pose2D& pose, const Path& path) {
  return closest_arc_length(path, pose).second;
}

/// Mean deviation: the ~20 ms deviation series is linearly interpolated onto
/// a 1 ms grid and arithmetically averaged.
inline double mean_deviation(const TrialRecord& record, const Path& path,
                             double grid_dt = 1e-3) {
  const auto& samples = record.samples;
  if (samples.size() < 2) throw InsufficientData("mean_deviation needs >= 2 samples");
  std::vector<double> dev(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    dev[i] = deviation_from_path(samples[i].pose, path);

  const double t0 = samples.front().t;
  const double t1 = samples.back().t;
  const long n = static_cast<long>(std::floor((t1 - t0) / grid_dt + 1e-9));
  double sum = 0.0;
  std::size_t k = 0;
  for (long i = 0; i <= n; ++i) {
    const double t = t0 + static_cast<double>(i) * grid_dt;
    while (k + 2 < samples.size() && samples[k + 1].t <= t) ++k;
    const double span = samples[k + 1].t - samples[k].t;
    const double u = span > 0.0 ? std::clamp((t - samples[k].t) / span, 0.0, 1.0) : 0.0;
    sum += dev[k] + u * (dev[k + 1] - dev[k]);
  }
  return sum / static_cast<double>(n + 1);
}

/// Worst-case deviation over every sample of every listed trial.
inline double max_deviation(std::span<const TrialRecord> records, const Path& path) {
  if (records.empty()) throw InsufficientData("max_deviation needs >= 1 record");
  double worst = 0.0;
  for (const TrialRecord& r : records) {
    if (r.samples.empty()) throw InsufficientData("empty trial record");
    for (const TrialSample& s : r.samples)
      worst = std::max(worst, deviation_from_path(s.pose, path));
  }
  return worst;
}

/// Distance actually traveled divided by time to setpoint (or by the whole
/// record on timeout).
inline double average_speed(const TrialRecord& record) {
  const auto& samples = record.samples;
  if (samples.size() < 2) throw InsufficientData("average_speed needs >= 2 samples");
  const double cutoff = record.reached ? record.t_final : samples.back().t;
  const double duration = cutoff - samples.front().t;
  if (duration <= 0.0) throw InsufficientData("zero-duration record");
  double traveled = 0.0;
  for (std::size_t i = 1; i < samples.size() && samples[i].t <= cutoff + 1e-12; ++i)
    traveled += distance_xy(samples[i - 1].pose, samples[i].pose);
  return traveled / duration;
}

inline TrialMetrics compute_metrics(const TrialRecord& record, const Path& path) {
  TrialMetrics m;
  m.mean_deviation = mean_deviation(record, path);
  m.max_deviation = max_deviation(std::span(&record, 1), path);
  m.avg_speed = average_speed(record);
  if (record.reached) m.time_to_setpoint = record.t_final;
  assert(m.max_deviation >= m.mean_deviation - 1e-12);
  return m;
}

enum class MetricField { MeanDeviation, MaxDeviation, AvgSpeed, TimeToSetpoint };

inline std::optional<double> metric_value(const TrialMetrics& m, MetricField f) {
  switch (f) {
    case MetricField::MeanDeviation: return m.mean_deviation;
    case MetricField::MaxDeviation: return m.max_deviation;
    case MetricField::AvgSpeed: return m.avg_speed;
    default: return m.time_to_setpoint;
  }
}

/// Fixed-width histogram with bins anchored at multiples of bin_width.
/// Trials without a value (timeouts) are counted, not silently dropped.
struct Histogram {
  double bin_width = 0.0;
  long long min_bin = 0;          // lowest occupied bin index
  std::vector<int> counts;        // counts[i] covers [ (min_bin+i)*w, +w )
  int excluded = 0;

  double bin_lo(std::size_t i) const {
    return static_cast<double>(min_bin + static_cast<long long>(i)) * bin_width;
  }
};

inline Histogram spread_histogram(const std::vector<TrialMetrics>& metrics,
                                  MetricField field, double bin_width) {
  if (metrics.empty()) throw InsufficientData("histogram of nothing");
  if (!(bin_width > 0.0)) throw InvalidConstraint("bin_width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  std::vector<long long> bins;
  for (const TrialMetrics& m : metrics) {
    const auto v = metric_value(m, field);
    if (!v) {
      ++h.excluded;
      continue;
    }
    bins.push_back(static_cast<long long>(std::floor(*v / bin_width)));
  }
  if (bins.empty()) return h;
  h.min_bin = *std::min_element(bins.begin(), bins.end());
  const long long max_bin = *std::max_element(bins.begin(), bins.end());
  h.counts.assign(static_cast<std::size_t>(max_bin - h.min_bin + 1), 0);
  for (long long b : bins) ++h.counts[static_cast<std::size_t>(b - h.min_bin)];
  return h;
}

/// Max minus min of a metric across trials (repeatability spread).
inline double metric_spread(const std::vector<TrialMetrics>& metrics, MetricField field) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TrialMetrics& m : metrics)
    if (const auto v = metric_value(m, field)) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  if (lo > hi) throw InsufficientData("no defined values for spread");
  return hi - lo;
}

/// Slip-clamp activations after the robot first passes `fraction` of the
/// path (instability near the path end).
inline long long near_end_slip_count(const TrialRecord& record, const Path& path,
                                     double fraction = 0.75) {
  if (record.samples.empty()) return 0;
  const double cut = fraction * path.total_length();
  for (const TrialSample& s : record.samples) {
    if (closest_arc_length(path, s.pose).first >= cut)
      return record.slip_events - s.slip_events;
  }
  return 0;
}

}  // namespace holo
