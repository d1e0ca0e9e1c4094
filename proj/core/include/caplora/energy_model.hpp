#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace caplora {

/// Operating states of the device, including the non-operational ones.
/// Charging is the initial phase before the capacitor first reaches the
/// reactivation threshold; Off is any later sub-threshold period.
enum class DeviceState { Charging, Off, WakeUp, Sleep, Tx, Idle, Rx1, Rx2 };

std::string_view to_string(DeviceState s);

/// True for every state in which the device is powered and can run code.
bool is_operational(DeviceState s);

/// The harvester is an ideal voltage source E behind a series resistance
/// r_i(t) = E^2 / P_h(t) that encodes the instantaneous harvested power.
/// Below min_power_floor_w the harvester is treated as absent (r_i = inf).
struct HarvesterParams {
  double source_voltage_v = 3.3;
  double min_power_floor_w = 1e-9;
  void validate() const;
};

struct Thresholds {
  double v_low_v = 1.8;   ///< below this the device switches off
  double v_high_v = 3.0;  ///< reactivation threshold
};

/// Equivalent load resistance per device state. Defaults approximate an
/// SX127x-class radio plus MCU on a 3.3 V rail:
/// sleep ~1.5 uA, wake-up transient ~5 mA, inter-window idle ~0.4 mA,
/// RX ~11 mA, TX ~37 mA at 14 dBm. Off is a near-open circuit.
struct LoadProfile {
  double off_ohm = 1e9;
  double sleep_ohm = 2.2e6;
  double wakeup_ohm = 660.0;
  double idle_ohm = 8250.0;
  double rx_ohm = 300.0;
  double tx_ohm = 90.0;

  double resistance(DeviceState s) const;
  void validate() const;
};

/// Energy store. voltage_v is the instantaneous capacitor voltage;
/// entry_voltage_v is the voltage at the instant the current device state
/// was entered.
struct CapacitorState {
  double capacitance_f = 0.1;
  double voltage_v = 0.0;
  double entry_voltage_v = 0.0;
};

/// r_i = E^2 / P_h. Returns +inf when power_w is at or below the floor.
double harvester_resistance(double power_w, const HarvesterParams& hp);

/// Parallel combination R_L * r_i / (R_L + r_i) seen by the capacitor.
/// For an absent harvester (r_i = inf) this is exactly the load.
double equivalent_resistance(double load_ohm, double harvester_ohm);

/// First-order RC response of the capacitor voltage after dt seconds with a
/// fixed load and harvester resistance:
///   v(dt) = E * (Req/r_i) * (1 - exp(-dt/(Req*C))) + v0 * exp(-dt/(Req*C))
/// The charging term vanishes for r_i = inf (pure discharge through the load).
double voltage_after(double v0, double req_ohm, double harvester_ohm,
                     double source_v, double capacitance_f, double dt_s);

/// Inverse of voltage_after: the unique dt >= 0 at which the voltage reaches
/// target_v, or nullopt when the steady state lies on the wrong side of the
/// target and the voltage never gets there.
std::optional<double> time_to_reach(double v0, double target_v, double req_ohm,
                                    double harvester_ohm, double source_v,
                                    double capacitance_f);

struct PowerSegment {
  double duration_s = 0.0;
  double power_w = 0.0;
};

/// Folds voltage_after across piecewise-constant harvest segments under one
/// load, carrying the running voltage across segment boundaries.
double advance_piecewise(double v0, double load_ohm,
                         std::span<const PowerSegment> segments,
                         const HarvesterParams& hp, double capacitance_f);

}  // namespace caplora
