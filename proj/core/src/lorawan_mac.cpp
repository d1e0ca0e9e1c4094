#include "caplora/lorawan_mac.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace caplora {

void RadioParams::validate() const {
  if (spreading_factor < 7 || spreading_factor > 12) {
    throw std::domain_error("spreading factor must be in 7..12");
  }
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("bandwidth must be positive");
  if (coding_rate_index < 1 || coding_rate_index > 4) {
    throw std::domain_error("coding rate index must be in 1..4");
  }
  if (preamble_symbols < 1) throw std::domain_error("preamble must have at least one symbol");
  if (overhead_bytes < 0) throw std::domain_error("overhead bytes must be non-negative");
}

int max_payload_bytes(int spreading_factor) {
  switch (spreading_factor) {
    case 7:
    case 8: return 222;
    case 9: return 115;
    case 10:
    case 11:
    case 12: return 51;
    default: throw std::domain_error("spreading factor must be in 7..12");
  }
}

double symbol_time_s(const RadioParams& radio) {
  return std::pow(2.0, radio.spreading_factor) / radio.bandwidth_hz;
}

double time_on_air_s(const RadioParams& radio, int payload_bytes) {
  radio.validate();
  if (payload_bytes < 0) throw std::domain_error("payload must be non-negative");
  if (payload_bytes > max_payload_bytes(radio.spreading_factor)) {
    throw std::domain_error("payload of " + std::to_string(payload_bytes) +
                            " B exceeds the limit for SF" +
                            std::to_string(radio.spreading_factor));
  }
  const double tsym = symbol_time_s(radio);
  const int sf = radio.spreading_factor;
  const bool ldro = sf >= 11 && radio.bandwidth_hz == 125e3;
  const int frame_bytes = payload_bytes + radio.overhead_bytes;
  const int ih = radio.explicit_header ? 0 : 1;
  const int crc = radio.crc_on ? 1 : 0;
  const double num = 8.0 * frame_bytes - 4.0 * sf + 28.0 + 16.0 * crc - 20.0 * ih;
  const double den = 4.0 * (sf - (ldro ? 2 : 0));
  const double extra = std::max(std::ceil(num / den) * (radio.coding_rate_index + 4), 0.0);
  const double preamble = (radio.preamble_symbols + 4.25) * tsym;
  return preamble + (8.0 + extra) * tsym;
}

double min_tx_interval_s(double toa_s, double duty_cycle) {
  if (!(duty_cycle > 0.0) || duty_cycle > 1.0) {
    throw std::domain_error("duty cycle must be in (0, 1]");
  }
  return toa_s / duty_cycle;
}

void ChannelPlan::validate() const {
  if (!(uplink_duty_cycle > 0.0) || uplink_duty_cycle > 1.0 ||
      !(downlink_duty_cycle > 0.0) || downlink_duty_cycle > 1.0) {
    throw std::domain_error("duty cycle values must be in (0, 1]");
  }
  if (rx2_spreading_factor < 7 || rx2_spreading_factor > 12) {
    throw std::domain_error("rx2 spreading factor must be in 7..12");
  }
}

std::string_view to_string(TrafficType t) {
  return t == TrafficType::Confirmed ? "confirmed" : "unconfirmed";
}

std::string_view to_string(AckWindow w) {
  switch (w) {
    case AckWindow::None: return "none";
    case AckWindow::Rx1: return "rx1";
    case AckWindow::Rx2: return "rx2";
  }
  return "?";
}

void TxCycleSpec::validate() const {
  radio.validate();
  channels.validate();
  if (payload_bytes < 0 || payload_bytes > max_payload_bytes(radio.spreading_factor)) {
    throw std::domain_error("payload out of range for the spreading factor");
  }
  if (!(rx1_delay_s < rx2_delay_s)) throw std::domain_error("rx1 delay must precede rx2 delay");
  if (!(rx_window_symbols > 0.0)) throw std::domain_error("rx window timeout must be positive");
  if (rx1_delay_s + rx_window_timeout_s(*this, radio.spreading_factor) > rx2_delay_s) {
    throw std::domain_error("rx1 window would overlap the rx2 opening");
  }
}

double rx_window_timeout_s(const TxCycleSpec& spec, int window_sf) {
  RadioParams win = spec.radio;
  win.spreading_factor = window_sf;
  return spec.rx_window_symbols * symbol_time_s(win);
}

double ack_time_on_air_s(const TxCycleSpec& spec, int window_sf) {
  RadioParams win = spec.radio;
  win.spreading_factor = window_sf;
  return time_on_air_s(win, 0);
}

std::optional<double> duty_cycle_gate(const DutyCycleState& dc, double now_s) {
  if (now_s >= dc.next_uplink_start_s) return std::nullopt;
  return dc.next_uplink_start_s;
}

std::optional<double> downlink_gate(const DutyCycleState& dc, double now_s) {
  if (now_s >= dc.next_downlink_start_s) return std::nullopt;
  return dc.next_downlink_start_s;
}

DutyCycleState record_uplink(DutyCycleState dc, double start_s, double toa_s,
                             double duty_cycle) {
  if (start_s < dc.next_uplink_start_s) {
    throw std::logic_error("uplink recorded before the duty-cycle gate released");
  }
  dc.next_uplink_start_s = start_s + min_tx_interval_s(toa_s, duty_cycle);
  return dc;
}

DutyCycleState record_downlink(DutyCycleState dc, double start_s, double toa_s,
                               double duty_cycle) {
  if (start_s < dc.next_downlink_start_s) {
    throw std::logic_error("downlink recorded before the duty-cycle gate released");
  }
  dc.next_downlink_start_s = start_s + min_tx_interval_s(toa_s, duty_cycle);
  return dc;
}

std::vector<CycleSegment> build_cycle_timeline(const TxCycleSpec& spec,
                                               double toa_uplink_s) {
  spec.validate();
  const AckWindow ack =
      spec.traffic == TrafficType::Confirmed ? spec.ack_window : AckWindow::None;
  const int sf_up = spec.radio.spreading_factor;
  const int sf_rx2 = spec.channels.rx2_spreading_factor;

  std::vector<CycleSegment> timeline;
  timeline.push_back({DeviceState::Tx, toa_uplink_s});
  timeline.push_back({DeviceState::Idle, spec.rx1_delay_s});
  if (ack == AckWindow::Rx1) {
    // Preamble detected right at the window opening; the radio stays in RX
    // for the whole downlink frame and the cycle ends without opening RX2.
    timeline.push_back({DeviceState::Rx1, ack_time_on_air_s(spec, sf_up)});
  } else {
    const double w1 = rx_window_timeout_s(spec, sf_up);
    timeline.push_back({DeviceState::Rx1, w1});
    timeline.push_back({DeviceState::Idle, spec.rx2_delay_s - spec.rx1_delay_s - w1});
    if (ack == AckWindow::Rx2) {
      timeline.push_back({DeviceState::Rx2, ack_time_on_air_s(spec, sf_rx2)});
    } else {
      timeline.push_back({DeviceState::Rx2, rx_window_timeout_s(spec, sf_rx2)});
    }
  }
  timeline.push_back({DeviceState::Sleep, 0.0});
  return timeline;
}

}  // namespace caplora
