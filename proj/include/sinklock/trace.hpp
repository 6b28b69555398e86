#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sinklock/graph.hpp"
#include "sinklock/resource_model.hpp"

namespace sinklock {

enum class event_type {
  round_start,
  orientation_fixed,
  granted,
  released,
  terminated,
  message,
};

std::string_view to_string(event_type t) noexcept;
std::optional<event_type> parse_event_type(std::string_view name) noexcept;

/// One trace record. Optional fields are present only for the event types
/// that use them:
///   orientation_fixed: edge, direction
///   granted:           process, and resource_class for per-class grants
///   released, terminated: process
///   message:           process (sender), edge, kind, send_time, deliver_time
struct trace_event {
  event_type type = event_type::round_start;
  std::uint64_t round = 0;
  std::optional<process_id> process;
  std::optional<edge> on_edge;
  std::optional<std::pair<vertex, vertex>> direction;  // (tail, head)
  std::optional<class_id> resource_class;
  std::optional<std::string> kind;
  std::optional<double> send_time;
  std::optional<double> deliver_time;

  bool operator==(const trace_event&) const = default;

  static trace_event round_start(std::uint64_t round);
  static trace_event orientation_fixed(std::uint64_t round, edge e,
                                       vertex tail, vertex head);
  static trace_event granted(std::uint64_t round, process_id p);
  static trace_event granted_class(std::uint64_t round, process_id p,
                                   class_id r);
  static trace_event released(std::uint64_t round, process_id p);
  static trace_event terminated(std::uint64_t round, process_id p);
};

struct trace {
  std::vector<trace_event> events;

  void push(trace_event e) { events.push_back(std::move(e)); }
  bool operator==(const trace&) const = default;
};

/// Fields in the fixed order type, round, process, edge, direction, class,
/// kind, send_time, deliver_time; absent optionals are omitted.
nlohmann::ordered_json to_json(const trace_event& e);
trace_event event_from_json(const nlohmann::json& j);

std::string to_json_line(const trace_event& e);

/// JSON lines. An optional header object is written first as
/// {"type":"config", ...} and returned separately by read_trace.
void write_trace(std::ostream& out, const trace& t,
                 const nlohmann::ordered_json* header = nullptr);
trace read_trace(std::istream& in, nlohmann::json* header = nullptr);

/// Graph embedded in a trace header: {"n": ..., "edges": [[u, v], ...]}.
nlohmann::ordered_json graph_to_json(const graph& g);
graph graph_from_json(const nlohmann::json& j);

}  // namespace sinklock
