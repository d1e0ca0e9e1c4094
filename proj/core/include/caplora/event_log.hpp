#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "caplora/energy_model.hpp"
#include "caplora/lorawan_mac.hpp"

namespace caplora {

enum class EventKind { Transition, Generate, Send, TxComplete, CycleComplete, Drop, Ack };
enum class DropReason { DutyCycle, Off, Overwritten };

std::string_view to_string(EventKind k);
std::string_view to_string(DropReason r);

struct Event {
  double time_s = 0.0;
  EventKind kind = EventKind::Transition;
  double voltage_v = 0.0;
  DeviceState state = DeviceState::Charging;  // Transition target
  DropReason reason = DropReason::DutyCycle;  // Drop only
  AckWindow window = AckWindow::None;         // Ack only
};

/// Ordered record of one scenario run. A Send marks the start of an uplink;
/// the packet counts only once the matching TxComplete appears (a switch-off
/// during the TX segment loses it).
struct EventLog {
  std::vector<Event> events;

  void write_text(std::ostream& out) const;
  std::string to_text() const;

  /// Time of the first transition out of the initial charging phase.
  std::optional<double> first_activation_s() const;

  /// Start times of uplinks whose TX segment completed.
  std::vector<double> counted_send_times_s() const;

  int packets_sent() const;
};

}  // namespace caplora
