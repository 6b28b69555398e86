#include "sinklock/trace.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace sinklock {

namespace {

constexpr std::string_view event_names[] = {
    "round_start", "orientation_fixed", "granted", "released", "terminated",
    "message"};

}  // namespace

std::string_view to_string(event_type t) noexcept {
  return event_names[static_cast<int>(t)];
}

std::optional<event_type> parse_event_type(std::string_view name) noexcept {
  for (std::size_t i = 0; i < std::size(event_names); ++i) {
    if (event_names[i] == name) return static_cast<event_type>(i);
  }
  return std::nullopt;
}

trace_event trace_event::round_start(std::uint64_t round) {
  trace_event e;
  e.type = event_type::round_start;
  e.round = round;
  return e;
}

trace_event trace_event::orientation_fixed(std::uint64_t round, edge on,
                                           vertex tail, vertex head) {
  trace_event e;
  e.type = event_type::orientation_fixed;
  e.round = round;
  e.on_edge = on;
  e.direction = std::make_pair(tail, head);
  return e;
}

trace_event trace_event::granted(std::uint64_t round, process_id p) {
  trace_event e;
  e.type = event_type::granted;
  e.round = round;
  e.process = p;
  return e;
}

trace_event trace_event::granted_class(std::uint64_t round, process_id p,
                                       class_id r) {
  auto e = granted(round, p);
  e.resource_class = r;
  return e;
}

trace_event trace_event::released(std::uint64_t round, process_id p) {
  trace_event e;
  e.type = event_type::released;
  e.round = round;
  e.process = p;
  return e;
}

trace_event trace_event::terminated(std::uint64_t round, process_id p) {
  trace_event e;
  e.type = event_type::terminated;
  e.round = round;
  e.process = p;
  return e;
}

nlohmann::ordered_json to_json(const trace_event& e) {
  nlohmann::ordered_json j;
  j["type"] = to_string(e.type);
  j["round"] = e.round;
  if (e.process) j["process"] = *e.process;
  if (e.on_edge) j["edge"] = {e.on_edge->u, e.on_edge->v};
  if (e.direction) {
    j["direction"] = std::to_string(e.direction->first) + ">" +
                     std::to_string(e.direction->second);
  }
  if (e.resource_class) j["class"] = *e.resource_class;
  if (e.kind) j["kind"] = *e.kind;
  if (e.send_time) j["send_time"] = *e.send_time;
  if (e.deliver_time) j["deliver_time"] = *e.deliver_time;
  return j;
}

trace_event event_from_json(const nlohmann::json& j) {
  trace_event e;
  const auto name = j.at("type").get<std::string>();
  const auto type = parse_event_type(name);
  if (!type) throw std::invalid_argument("unknown trace event type '" + name + "'");
  e.type = *type;
  e.round = j.at("round").get<std::uint64_t>();
  if (j.contains("process")) e.process = j["process"].get<process_id>();
  if (j.contains("edge")) {
    const auto& pair = j["edge"];
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("trace edge must be [u, v]");
    }
    e.on_edge = edge{pair[0].get<vertex>(), pair[1].get<vertex>()};
  }
  if (j.contains("direction")) {
    const auto text = j["direction"].get<std::string>();
    const auto sep = text.find('>');
    if (sep == std::string::npos) {
      throw std::invalid_argument("malformed direction '" + text + "'");
    }
    e.direction = std::make_pair(
        static_cast<vertex>(std::stoul(text.substr(0, sep))),
        static_cast<vertex>(std::stoul(text.substr(sep + 1))));
  }
  if (j.contains("class")) e.resource_class = j["class"].get<class_id>();
  if (j.contains("kind")) e.kind = j["kind"].get<std::string>();
  if (j.contains("send_time")) e.send_time = j["send_time"].get<double>();
  if (j.contains("deliver_time")) e.deliver_time = j["deliver_time"].get<double>();
  return e;
}

std::string to_json_line(const trace_event& e) { return to_json(e).dump(); }

void write_trace(std::ostream& out, const trace& t,
                 const nlohmann::ordered_json* header) {
  if (header) {
    nlohmann::ordered_json line;
    line["type"] = "config";
    for (const auto& [key, value] : header->items()) line[key] = value;
    out << line.dump() << '\n';
  }
  for (const auto& e : t.events) out << to_json_line(e) << '\n';
}

trace read_trace(std::istream& in, nlohmann::json* header) {
  trace t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": " + err.what());
    }
    if (j.value("type", "") == "config") {
      if (header) *header = j;
      continue;
    }
    try {
      t.push(event_from_json(j));
    } catch (const std::exception& err) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": " + err.what());
    }
  }
  return t;
}

nlohmann::ordered_json graph_to_json(const graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  return j;
}

graph graph_from_json(const nlohmann::json& j) {
  std::vector<edge> edges;
  for (const auto& pair : j.at("edges")) {
    edges.push_back({pair.at(0).get<vertex>(), pair.at(1).get<vertex>()});
  }
  return graph(j.at("n").get<std::size_t>(), std::move(edges));
}

}  // namespace sinklock
