#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caplora/event_log.hpp"

namespace caplora {

/// Per-scenario results plus a config echo, so every run can be reproduced
/// from its own output row.
struct MetricsReport {
  std::string label;
  std::string scheduler;
  std::string trace_desc;
  double capacitance_f = 0.0;
  int payload_bytes = 0;
  int spreading_factor = 0;
  std::string traffic;
  int rx2_spreading_factor = 0;
  double horizon_s = 0.0;
  double generation_interval_s = 0.0;
  double v_low_v = 0.0;
  double v_high_v = 0.0;
  double toa_s = 0.0;

  int packets_sent = 0;
  int p_max = 0;  ///< floored duty-cycle packet budget
  double efficiency_pct = 0.0;
  double on_fraction = 0.0;
  double off_fraction = 0.0;
  double charging_fraction = 0.0;
  std::optional<double> mean_inter_tx_s;
  std::optional<double> stddev_inter_tx_s;

  double bucket_width_s = 120.0;
  std::vector<int> interval_packets;

  std::string error;  ///< non-empty when the scenario failed to run
};

/// Percentage of the duty-cycle-limited packet budget actually used:
/// 100 * sent / (sim_time * dc / toa). The denominator is not floored.
double efficiency_pct(int packets_sent, double sim_time_s, double t_packet_s,
                      double duty_cycle = 0.01);

/// Floored packet budget sim_time / (toa / dc).
int max_packets(double sim_time_s, double t_packet_s, double duty_cycle = 0.01);

struct TimeFractions {
  double on = 0.0;
  double off = 0.0;
  double charging = 0.0;
};

/// State occupancy over [0, horizon] reconstructed from the transition
/// events. Charging is everything before the first activation; Off is
/// post-activation sub-threshold time; On is the rest.
TimeFractions time_fractions(const EventLog& log, double horizon_s);

struct InterTxStats {
  double mean_s = 0.0;
  double stddev_s = 0.0;  ///< population standard deviation
};

/// Statistics over successive send-start differences, ignoring everything
/// before the first activation. Absent with fewer than two counted sends.
std::optional<InterTxStats> inter_tx_stats(const EventLog& log);

/// Counted sends bucketed by start time; the counts sum to packets_sent.
std::vector<int> interval_packet_counts(const EventLog& log, double horizon_s,
                                        double bucket_width_s);

std::string report_csv_header();
std::string report_csv_row(const MetricsReport& report);

/// One row per scenario, stable column order, full-precision numbers.
void write_report_csv(const std::vector<MetricsReport>& reports, const std::string& path);

/// Long-format per-interval packet counts: label,bucket_start_s,packets.
void write_interval_series_csv(const std::vector<MetricsReport>& reports,
                               const std::string& path);

}  // namespace caplora
