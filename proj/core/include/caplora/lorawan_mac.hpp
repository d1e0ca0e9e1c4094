#pragma once

#include <array>
#include <optional>
#include <vector>

#include "caplora/energy_model.hpp"

namespace caplora {

/// LoRa PHY settings for an uplink frame. overhead_bytes is the MAC+PHY
/// framing added on top of the application payload.
struct RadioParams {
  int spreading_factor = 7;
  double bandwidth_hz = 125e3;
  int coding_rate_index = 1;  // code rate 4/(4+index)
  int preamble_symbols = 8;
  bool explicit_header = true;
  bool crc_on = true;
  int overhead_bytes = 13;
  void validate() const;
};

/// Largest application payload accepted at the given spreading factor
/// (EU868, 125 kHz).
int max_payload_bytes(int spreading_factor);

double symbol_time_s(const RadioParams& radio);

/// Frame duration: preamble (preamble_symbols + 4.25 symbols) plus payload
/// symbols, with low-data-rate optimization active for SF >= 11 at 125 kHz.
double time_on_air_s(const RadioParams& radio, int payload_bytes);

/// Minimum start-to-start spacing between transmissions in a sub-band
/// regulated at the given duty cycle: toa / duty_cycle.
double min_tx_interval_s(double toa_s, double duty_cycle);

/// EU868 plan: three shared 125 kHz channels under an aggregate 1% duty
/// cycle, plus a dedicated downlink channel at 10%.
struct ChannelPlan {
  std::array<double, 3> uplink_channels_hz{868.1e6, 868.3e6, 868.5e6};
  double uplink_duty_cycle = 0.01;
  double downlink_channel_hz = 869.525e6;
  double downlink_duty_cycle = 0.10;
  int rx2_spreading_factor = 12;
  void validate() const;
};

enum class TrafficType { Unconfirmed, Confirmed };
enum class AckWindow { None, Rx1, Rx2 };

std::string_view to_string(TrafficType t);
std::string_view to_string(AckWindow w);

/// Everything needed to lay out one transmission cycle. ack_window states
/// where the gateway answers confirmed uplinks. RX delays are measured from
/// the end of the uplink; the receive windows time out after
/// rx_window_symbols preamble symbols at the window's spreading factor.
struct TxCycleSpec {
  int payload_bytes = 5;
  RadioParams radio;
  ChannelPlan channels;
  TrafficType traffic = TrafficType::Unconfirmed;
  AckWindow ack_window = AckWindow::Rx1;
  double rx1_delay_s = 1.0;
  double rx2_delay_s = 2.0;
  double rx_window_symbols = 5.0;
  void validate() const;
};

/// Preamble-detect timeout of a receive window at the given SF.
double rx_window_timeout_s(const TxCycleSpec& spec, int window_sf);

/// Airtime of a downlink acknowledgement: a zero-payload frame at the
/// window's SF.
double ack_time_on_air_s(const TxCycleSpec& spec, int window_sf);

/// Earliest allowed start times, one token per regulated band.
struct DutyCycleState {
  double next_uplink_start_s = 0.0;
  double next_downlink_start_s = 0.0;
};

/// nullopt when a transmission may start now, otherwise the time the
/// sub-band frees up.
std::optional<double> duty_cycle_gate(const DutyCycleState& dc, double now_s);
std::optional<double> downlink_gate(const DutyCycleState& dc, double now_s);

DutyCycleState record_uplink(DutyCycleState dc, double start_s, double toa_s,
                             double duty_cycle);
DutyCycleState record_downlink(DutyCycleState dc, double start_s, double toa_s,
                               double duty_cycle);

struct CycleSegment {
  DeviceState state = DeviceState::Sleep;
  double duration_s = 0.0;
};

/// Deterministic state sequence of one transmission cycle, always ending in
/// a zero-duration Sleep marker. An acknowledgement in RX1 extends that
/// window to the ack airtime and suppresses RX2 entirely; otherwise both
/// windows open and time out (or RX2 carries the ack).
std::vector<CycleSegment> build_cycle_timeline(const TxCycleSpec& spec,
                                               double toa_uplink_s);

}  // namespace caplora
