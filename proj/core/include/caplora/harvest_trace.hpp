#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace caplora {

struct TraceSample {
  double time_s = 0.0;
  double power_w = 0.0;
};

/// Piecewise-constant harvested-power signal. Sampling need not be uniform;
/// the power holds its value between samples (zero-order hold) and past the
/// last sample.
class HarvestTrace {
 public:
  HarvestTrace() = default;
  static HarvestTrace from_samples(std::vector<TraceSample> samples);

  /// Text format, one record per line: time_s,power_mW. A header line is
  /// tolerated on load and omitted on save.
  static HarvestTrace load_csv(const std::string& path);
  void save_csv(const std::string& path) const;

  bool empty() const { return samples_.empty(); }
  double start_time_s() const;
  double end_time_s() const;
  const std::vector<TraceSample>& samples() const { return samples_; }

  /// Power of the latest sample at or before t. t before the trace start is
  /// a domain error.
  double power_at(double t_s) const;

  struct ActiveSegment {
    double power_w = 0.0;
    double end_s = 0.0;  ///< +inf past the last sample
  };
  ActiveSegment segment_at(double t_s) const;

  /// First sample time strictly after t, if any.
  std::optional<double> next_change_after(double t_s) const;

  /// Exact mean of the held signal over [t-x, t); when the window reaches
  /// past the trace start, the mean is over the available prefix.
  double window_mean(double t_s, double window_s) const;

  /// Minimum of the held signal over [t-x, t), same prefix rule.
  double window_min(double t_s, double window_s) const;

 private:
  std::vector<TraceSample> samples_;
  // index of the sample active at t (last with time <= t)
  std::size_t index_at(double t_s) const;
};

/// Smoothed mean/deviation tracker. Each update folds a fresh window mean
/// into the running mean A and the absolute deviation D with gain g; the
/// deviation update uses the already-updated mean.
struct EwmaEstimator {
  double gain = 0.1;
  double window_s = 4.0;
  double mean_w = 0.0;       // A
  double deviation_w = 0.0;  // D
};

EwmaEstimator ewma_update(EwmaEstimator est, double window_mean_w);

/// Pessimistic one-sided predictor: max(A - D, 0).
double ewma_predict(const EwmaEstimator& est);

/// Uniform trace at constant power, sampled every dt_s over [0, duration].
HarvestTrace synth_constant(double power_w, double duration_s, double dt_s);

/// Clamped-at-zero first-order autoregressive trace with the requested
/// marginal mean/stddev before clamping. Deterministic for a fixed seed.
HarvestTrace synth_stochastic(double mean_w, double stddev_w,
                              double correlation_time_s, double duration_s,
                              double dt_s, std::uint64_t seed);

}  // namespace caplora
