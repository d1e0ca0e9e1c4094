#include "caplora/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace caplora {

namespace {

std::string fmt(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string fmt(int value) { return std::to_string(value); }

std::string fmt(const std::optional<double>& value) {
  return value ? fmt(*value) : std::string();
}

}  // namespace

double efficiency_pct(int packets_sent, double sim_time_s, double t_packet_s,
                      double duty_cycle) {
  if (!(t_packet_s > 0.0)) throw std::domain_error("packet airtime must be positive");
  if (!(sim_time_s > 0.0)) throw std::domain_error("simulation time must be positive");
  const double budget = sim_time_s * duty_cycle / t_packet_s;
  return 100.0 * packets_sent / budget;
}

int max_packets(double sim_time_s, double t_packet_s, double duty_cycle) {
  if (!(t_packet_s > 0.0)) throw std::domain_error("packet airtime must be positive");
  return static_cast<int>(std::floor(sim_time_s * duty_cycle / t_packet_s));
}

TimeFractions time_fractions(const EventLog& log, double horizon_s) {
  if (!(horizon_s > 0.0)) throw std::domain_error("horizon must be positive");
  TimeFractions acc;
  double cursor = 0.0;
  DeviceState state = DeviceState::Charging;
  auto accumulate = [&](double until) {
    const double dt = until - cursor;
    if (dt <= 0.0) return;
    if (state == DeviceState::Charging) {
      acc.charging += dt;
    } else if (state == DeviceState::Off) {
      acc.off += dt;
    } else {
      acc.on += dt;
    }
    cursor = until;
  };
  for (const Event& e : log.events) {
    if (e.kind != EventKind::Transition) continue;
    accumulate(std::min(e.time_s, horizon_s));
    state = e.state;
    cursor = std::min(e.time_s, horizon_s);
  }
  accumulate(horizon_s);
  acc.on /= horizon_s;
  acc.off /= horizon_s;
  acc.charging /= horizon_s;
  return acc;
}

std::optional<InterTxStats> inter_tx_stats(const EventLog& log) {
  const auto activation = log.first_activation_s();
  if (!activation) return std::nullopt;
  std::vector<double> sends = log.counted_send_times_s();
  std::vector<double> diffs;
  double prev = 0.0;
  bool have_prev = false;
  for (double t : sends) {
    if (t < *activation) continue;
    if (have_prev) diffs.push_back(t - prev);
    prev = t;
    have_prev = true;
  }
  if (diffs.empty()) return std::nullopt;
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(diffs.size());
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  var /= static_cast<double>(diffs.size());
  return InterTxStats{mean, std::sqrt(var)};
}

std::vector<int> interval_packet_counts(const EventLog& log, double horizon_s,
                                        double bucket_width_s) {
  if (!(bucket_width_s > 0.0)) throw std::domain_error("bucket width must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(horizon_s / bucket_width_s));
  std::vector<int> counts(n, 0);
  for (double t : log.counted_send_times_s()) {
    auto k = static_cast<std::size_t>(std::floor(t / bucket_width_s));
    if (k >= counts.size()) k = counts.size() - 1;
    ++counts[k];
  }
  return counts;
}

std::string report_csv_header() {
  return "label,scheduler,trace,capacitance_f,payload_b,sf,traffic,rx2_sf,"
         "horizon_s,interval_s,v_low_v,v_high_v,toa_s,packets_sent,p_max,"
         "efficiency_pct,on_fraction,off_fraction,charging_fraction,"
         "mean_inter_tx_s,stddev_inter_tx_s,error";
}

std::string report_csv_row(const MetricsReport& r) {
  std::string row;
  row += r.label;
  row += ',';
  row += r.scheduler;
  row += ',';
  row += r.trace_desc;
  row += ',';
  row += fmt(r.capacitance_f);
  row += ',';
  row += fmt(r.payload_bytes);
  row += ',';
  row += fmt(r.spreading_factor);
  row += ',';
  row += r.traffic;
  row += ',';
  row += fmt(r.rx2_spreading_factor);
  row += ',';
  row += fmt(r.horizon_s);
  row += ',';
  row += fmt(r.generation_interval_s);
  row += ',';
  row += fmt(r.v_low_v);
  row += ',';
  row += fmt(r.v_high_v);
  row += ',';
  row += fmt(r.toa_s);
  row += ',';
  row += fmt(r.packets_sent);
  row += ',';
  row += fmt(r.p_max);
  row += ',';
  row += fmt(r.efficiency_pct);
  row += ',';
  row += fmt(r.on_fraction);
  row += ',';
  row += fmt(r.off_fraction);
  row += ',';
  row += fmt(r.charging_fraction);
  row += ',';
  row += fmt(r.mean_inter_tx_s);
  row += ',';
  row += fmt(r.stddev_inter_tx_s);
  row += ',';
  row += r.error;
  return row;
}

void write_report_csv(const std::vector<MetricsReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file: " + path);
  out << report_csv_header() << '\n';
  for (const MetricsReport& r : reports) out << report_csv_row(r) << '\n';
  if (!out) throw std::runtime_error("error while writing report file: " + path);
}

void write_interval_series_csv(const std::vector<MetricsReport>& reports,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write interval series file: " + path);
  out << "label,bucket_start_s,packets\n";
  for (const MetricsReport& r : reports) {
    for (std::size_t k = 0; k < r.interval_packets.size(); ++k) {
      out << r.label << ',' << fmt(static_cast<double>(k) * r.bucket_width_s) << ','
          << r.interval_packets[k] << '\n';
    }
  }
  if (!out) throw std::runtime_error("error while writing interval series file: " + path);
}

}  // namespace caplora
