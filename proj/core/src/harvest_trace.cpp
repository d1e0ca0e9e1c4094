#include "caplora/harvest_trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <system_error>

namespace caplora {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_double(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::runtime_error("trace file: cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// Shifts the decimal exponent of a number's text form. The shift is exact,
// so milliwatt columns round-trip to the identical double.
std::string decimal_shift(std::string_view text, int shift) {
  std::size_t epos = text.find_first_of("eE");
  int exponent = 0;
  std::string mantissa;
  if (epos == std::string_view::npos) {
    mantissa = std::string(text);
  } else {
    mantissa = std::string(text.substr(0, epos));
    exponent = static_cast<int>(parse_double(text.substr(epos + 1)));
  }
  return mantissa + "e" + std::to_string(exponent + shift);
}

double parse_milliwatts(std::string_view token) {
  return parse_double(decimal_shift(token, -3));
}

std::string format_milliwatts(double power_w) {
  return decimal_shift(format_double(power_w), 3);
}

}  // namespace

HarvestTrace HarvestTrace::from_samples(std::vector<TraceSample> samples) {
  if (samples.empty()) throw std::domain_error("trace must contain at least one sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].power_w < 0.0) throw std::domain_error("trace powers must be non-negative");
    if (i > 0 && !(samples[i].time_s > samples[i - 1].time_s)) {
      throw std::domain_error("trace timestamps must be strictly increasing");
    }
  }
  HarvestTrace trace;
  trace.samples_ = std::move(samples);
  return trace;
}

HarvestTrace HarvestTrace::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::vector<TraceSample> samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("trace file: missing comma in line '" + line + "'");
    }
    std::string_view t_tok(line.data(), comma);
    std::string_view p_tok(line.data() + comma + 1, line.size() - comma - 1);
    if (first) {
      first = false;
      // optional header line
      if (!t_tok.empty() && !std::isdigit(static_cast<unsigned char>(t_tok.front())) &&
          t_tok.front() != '-' && t_tok.front() != '+' && t_tok.front() != '.') {
        continue;
      }
    }
    samples.push_back({parse_double(t_tok), parse_milliwatts(p_tok)});
  }
  return from_samples(std::move(samples));
}

void HarvestTrace::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  for (const TraceSample& s : samples_) {
    out << format_double(s.time_s) << ',' << format_milliwatts(s.power_w) << '\n';
  }
  if (!out) throw std::runtime_error("error while writing trace file: " + path);
}

double HarvestTrace::start_time_s() const {
  if (samples_.empty()) throw std::domain_error("empty trace");
  return samples_.front().time_s;
}

double HarvestTrace::end_time_s() const {
  if (samples_.empty()) throw std::domain_error("empty trace");
  return samples_.back().time_s;
}

std::size_t HarvestTrace::index_at(double t_s) const {
  if (samples_.empty() || t_s < samples_.front().time_s) {
    throw std::domain_error("query before the start of the trace");
  }
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t_s,
                             [](double t, const TraceSample& s) { return t < s.time_s; });
  return static_cast<std::size_t>(it - samples_.begin()) - 1;
}

double HarvestTrace::power_at(double t_s) const { return samples_[index_at(t_s)].power_w; }

HarvestTrace::ActiveSegment HarvestTrace::segment_at(double t_s) const {
  const std::size_t i = index_at(t_s);
  const double end = i + 1 < samples_.size() ? samples_[i + 1].time_s : kInf;
  return {samples_[i].power_w, end};
}

std::optional<double> HarvestTrace::next_change_after(double t_s) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t_s,
                             [](double t, const TraceSample& s) { return t < s.time_s; });
  if (it == samples_.end()) return std::nullopt;
  return it->time_s;
}

double HarvestTrace::window_mean(double t_s, double window_s) const {
  if (!(window_s > 0.0)) throw std::domain_error("window must be positive");
  const double lo = std::max(start_time_s(), t_s - window_s);
  if (!(t_s > lo)) return power_at(t_s);  // degenerate window at the trace start
  std::size_t i = index_at(lo);
  double integral = 0.0;
  double cursor = lo;
  while (cursor < t_s) {
    const double seg_end = i + 1 < samples_.size() ? samples_[i + 1].time_s : kInf;
    const double upto = std::min(seg_end, t_s);
    integral += samples_[i].power_w * (upto - cursor);
    cursor = upto;
    ++i;
  }
  return integral / (t_s - lo);
}

double HarvestTrace::window_min(double t_s, double window_s) const {
  if (!(window_s > 0.0)) throw std::domain_error("window must be positive");
  const double lo = std::max(start_time_s(), t_s - window_s);
  if (!(t_s > lo)) return power_at(t_s);
  std::size_t i = index_at(lo);
  double minimum = samples_[i].power_w;
  while (i + 1 < samples_.size() && samples_[i + 1].time_s < t_s) {
    ++i;
    minimum = std::min(minimum, samples_[i].power_w);
  }
  return minimum;
}

EwmaEstimator ewma_update(EwmaEstimator est, double window_mean_w) {
  if (window_mean_w < 0.0) throw std::domain_error("window mean must be non-negative");
  est.mean_w = est.gain * window_mean_w + (1.0 - est.gain) * est.mean_w;
  est.deviation_w =
      est.gain * std::abs(window_mean_w - est.mean_w) + (1.0 - est.gain) * est.deviation_w;
  return est;
}

double ewma_predict(const EwmaEstimator& est) {
  return std::max(est.mean_w - est.deviation_w, 0.0);
}

HarvestTrace synth_constant(double power_w, double duration_s, double dt_s) {
  if (power_w < 0.0) throw std::domain_error("power must be non-negative");
  if (duration_s < 0.0) throw std::domain_error("duration must be non-negative");
  if (!(dt_s > 0.0)) throw std::domain_error("sample interval must be positive");
  const auto n = static_cast<std::size_t>(std::floor(duration_s / dt_s));
  std::vector<TraceSample> samples;
  samples.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    samples.push_back({static_cast<double>(k) * dt_s, power_w});
  }
  return HarvestTrace::from_samples(std::move(samples));
}

HarvestTrace synth_stochastic(double mean_w, double stddev_w,
                              double correlation_time_s, double duration_s,
                              double dt_s, std::uint64_t seed) {
  if (mean_w < 0.0) throw std::domain_error("mean power must be non-negative");
  if (stddev_w < 0.0) throw std::domain_error("stddev must be non-negative");
  if (stddev_w == 0.0) return synth_constant(mean_w, duration_s, dt_s);
  if (duration_s < 0.0) throw std::domain_error("duration must be non-negative");
  if (!(dt_s > 0.0)) throw std::domain_error("sample interval must be positive");

  const double phi = correlation_time_s > 0.0 ? std::exp(-dt_s / correlation_time_s) : 0.0;
  const double innovation_sd = stddev_w * std::sqrt(1.0 - phi * phi);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const auto n = static_cast<std::size_t>(std::floor(duration_s / dt_s));
  std::vector<TraceSample> samples;
  samples.reserve(n + 1);
  double state = mean_w + stddev_w * normal(rng);  // stationary start
  samples.push_back({0.0, std::max(state, 0.0)});
  for (std::size_t k = 1; k <= n; ++k) {
    state = mean_w + phi * (state - mean_w) + innovation_sd * normal(rng);
    samples.push_back({static_cast<double>(k) * dt_s, std::max(state, 0.0)});
  }
  return HarvestTrace::from_samples(std::move(samples));
}

}  // namespace caplora
