#include "caplora/energy_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace caplora {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(DeviceState s) {
  switch (s) {
    case DeviceState::Charging: return "charging";
    case DeviceState::Off: return "off";
    case DeviceState::WakeUp: return "wakeup";
    case DeviceState::Sleep: return "sleep";
    case DeviceState::Tx: return "tx";
    case DeviceState::Idle: return "idle";
    case DeviceState::Rx1: return "rx1";
    case DeviceState::Rx2: return "rx2";
  }
  return "?";
}

bool is_operational(DeviceState s) {
  return s != DeviceState::Charging && s != DeviceState::Off;
}

void HarvesterParams::validate() const {
  if (!(source_voltage_v > 0.0)) {
    throw std::domain_error("harvester source voltage must be positive");
  }
  if (min_power_floor_w < 0.0) {
    throw std::domain_error("harvester power floor must be non-negative");
  }
}

double LoadProfile::resistance(DeviceState s) const {
  switch (s) {
    case DeviceState::Charging:
    case DeviceState::Off: return off_ohm;
    case DeviceState::WakeUp: return wakeup_ohm;
    case DeviceState::Sleep: return sleep_ohm;
    case DeviceState::Tx: return tx_ohm;
    case DeviceState::Idle: return idle_ohm;
    case DeviceState::Rx1:
    case DeviceState::Rx2: return rx_ohm;
  }
  return off_ohm;
}

void LoadProfile::validate() const {
  const double all[] = {off_ohm, sleep_ohm, wakeup_ohm, idle_ohm, rx_ohm, tx_ohm};
  for (double r : all) {
    if (!(r > 0.0) || std::isinf(r)) {
      throw std::domain_error("every load resistance must be positive and finite");
    }
  }
  for (double r : all) {
    if (r > off_ohm) throw std::domain_error("off must be the largest load resistance");
    if (r < tx_ohm) throw std::domain_error("tx must be the smallest load resistance");
  }
}

double harvester_resistance(double power_w, const HarvesterParams& hp) {
  if (power_w < 0.0) throw std::domain_error("harvested power must be non-negative");
  if (power_w <= hp.min_power_floor_w) return kInf;
  return hp.source_voltage_v * hp.source_voltage_v / power_w;
}

double equivalent_resistance(double load_ohm, double harvester_ohm) {
  if (!(load_ohm > 0.0) || std::isinf(load_ohm)) {
    throw std::domain_error("load resistance must be positive and finite");
  }
  if (!(harvester_ohm > 0.0)) {
    throw std::domain_error("harvester resistance must be positive");
  }
  if (std::isinf(harvester_ohm)) return load_ohm;
  return load_ohm * harvester_ohm / (load_ohm + harvester_ohm);
}

double voltage_after(double v0, double req_ohm, double harvester_ohm,
                     double source_v, double capacitance_f, double dt_s) {
  if (dt_s < 0.0) throw std::domain_error("dt must be non-negative");
  if (!(capacitance_f > 0.0)) throw std::domain_error("capacitance must be positive");
  if (!(req_ohm > 0.0)) throw std::domain_error("equivalent resistance must be positive");
  const double decay = std::exp(-dt_s / (req_ohm * capacitance_f));
  const double ratio = std::isinf(harvester_ohm) ? 0.0 : req_ohm / harvester_ohm;
  return source_v * ratio * (1.0 - decay) + v0 * decay;
}

std::optional<double> time_to_reach(double v0, double target_v, double req_ohm,
                                    double harvester_ohm, double source_v,
                                    double capacitance_f) {
  if (!(capacitance_f > 0.0)) throw std::domain_error("capacitance must be positive");
  if (!(req_ohm > 0.0)) throw std::domain_error("equivalent resistance must be positive");
  // v(t) = A + (v0 - A) e^{-t/tau}, steady state A = E * Req / r_i.
  const double ratio = std::isinf(harvester_ohm) ? 0.0 : req_ohm / harvester_ohm;
  const double steady = source_v * ratio;
  if (v0 == target_v) return 0.0;
  const double span = v0 - steady;
  if (span == 0.0) return std::nullopt;  // already at steady state
  const double frac = (target_v - steady) / span;
  if (frac <= 0.0 || frac > 1.0) return std::nullopt;  // target not on the path
  return -req_ohm * capacitance_f * std::log(frac);
}

double advance_piecewise(double v0, double load_ohm,
                         std::span<const PowerSegment> segments,
                         const HarvesterParams& hp, double capacitance_f) {
  double v = v0;
  for (const PowerSegment& seg : segments) {
    if (seg.duration_s < 0.0) throw std::domain_error("segment duration must be non-negative");
    const double ri = harvester_resistance(seg.power_w, hp);
    const double req = equivalent_resistance(load_ohm, ri);
    v = voltage_after(v, req, ri, hp.source_voltage_v, capacitance_f, seg.duration_s);
  }
  return v;
}

}  // namespace caplora
