#include "caplora/event_log.hpp"

#include <charconv>
#include <sstream>

namespace caplora {

namespace {

void append_double(std::string& out, double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

}  // namespace

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Transition: return "transition";
    case EventKind::Generate: return "generate";
    case EventKind::Send: return "send";
    case EventKind::TxComplete: return "tx_complete";
    case EventKind::CycleComplete: return "cycle_complete";
    case EventKind::Drop: return "drop";
    case EventKind::Ack: return "ack";
  }
  return "?";
}

std::string_view to_string(DropReason r) {
  switch (r) {
    case DropReason::DutyCycle: return "duty_cycle";
    case DropReason::Off: return "off";
    case DropReason::Overwritten: return "overwritten";
  }
  return "?";
}

void EventLog::write_text(std::ostream& out) const { out << to_text(); }

std::string EventLog::to_text() const {
  std::string out;
  out.reserve(events.size() * 40 + 64);
  out += "time_s,event,arg,voltage_v\n";
  for (const Event& e : events) {
    append_double(out, e.time_s);
    out += ',';
    out += to_string(e.kind);
    out += ',';
    switch (e.kind) {
      case EventKind::Transition: out += to_string(e.state); break;
      case EventKind::Drop: out += to_string(e.reason); break;
      case EventKind::Ack: out += to_string(e.window); break;
      default: break;
    }
    out += ',';
    append_double(out, e.voltage_v);
    out += '\n';
  }
  return out;
}

std::optional<double> EventLog::first_activation_s() const {
  for (const Event& e : events) {
    if (e.kind == EventKind::Transition && e.state == DeviceState::WakeUp) {
      return e.time_s;
    }
  }
  return std::nullopt;
}

std::vector<double> EventLog::counted_send_times_s() const {
  std::vector<double> times;
  double pending_start = -1.0;
  bool have_pending = false;
  for (const Event& e : events) {
    if (e.kind == EventKind::Send) {
      pending_start = e.time_s;
      have_pending = true;
    } else if (e.kind == EventKind::TxComplete && have_pending) {
      times.push_back(pending_start);
      have_pending = false;
    }
  }
  return times;
}

int EventLog::packets_sent() const {
  int count = 0;
  for (const Event& e : events) {
    if (e.kind == EventKind::TxComplete) ++count;
  }
  return count;
}

}  // namespace caplora
