#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sinklock/graph.hpp"
#include "sinklock/rgm_engine.hpp"
#include "sinklock/trace.hpp"

namespace sinklock {

/// Message-passing variant of the random-orientation run. Each process only
/// talks to its conflict-graph neighbors. Per live edge and round the lower
/// endpoint flips the coin and sends it up (coin), and the upper endpoint
/// answers once it has decided whether it is a sink (ack). A sink also
/// tells every live neighbor it is leaving (leave), before its acks. The
/// lower endpoint moves an edge to the next round after the ack; the upper
/// endpoint after the next coin or a leave. Channels are FIFO.

enum class message_kind { coin, ack, leave };
std::string_view to_string(message_kind k) noexcept;

struct message {
  message_kind kind = message_kind::coin;
  std::uint64_t round = 0;
  vertex from = 0;
  vertex to = 0;
  bool reversed = false;  // coin payload, as in edge_coin
};

class protocol_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct link_state {
  vertex neighbor = 0;
  bool lower = false;  // this process is the lower endpoint
  bool live = true;
  std::optional<bool> outgoing;  // current round: arc leaves this process
  std::optional<std::uint64_t> early_round;
  bool early_outgoing = false;
  bool early_leave = false;  // the early coin's sender already left that round
  bool neighbor_left = false;
  bool resolved = false;
};

enum class process_phase { idle, deciding, waiting, done };

struct process_state {
  vertex id = 0;
  std::uint64_t seed = 0;
  std::uint64_t round = 0;
  process_phase phase = process_phase::idle;
  std::vector<link_state> links;  // by ascending neighbor
};

struct protocol_result {
  process_state state;
  std::vector<message> outgoing;
  std::vector<trace_event> events;
};

process_state initial_state(const graph& g, vertex v, std::uint64_t seed);

/// Enters round 1.
protocol_result protocol_start(process_state s);

/// Handles one delivered message. Throws protocol_error on messages the
/// protocol never produces in that state.
protocol_result protocol_step(process_state s, const message& m);

struct delay_spec {
  enum class kind { zero, constant, uniform } type = kind::zero;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t seed = 0;

  /// "zero", "constant:<d>", "uniform:<lo>:<hi>". Throws invalid_argument.
  static delay_spec parse(std::string_view text, std::uint64_t seed = 0);
  std::string str() const;
  double sample(std::uint64_t message_seq) const;
};

struct message_counts {
  std::uint64_t coin = 0;
  std::uint64_t ack = 0;
  std::uint64_t leave = 0;
  std::uint64_t total() const noexcept { return coin + ack + leave; }
};

struct dist_stats {
  std::map<std::uint64_t, message_counts> per_round;
  std::uint64_t rounds = 0;
  double simulated_time = 0.0;
  std::uint64_t messages() const noexcept;
};

struct dist_run {
  trace events;
  run_status status = run_status::incomplete;
  dist_stats stats;
  /// granted[r - 1]: processes granted in round r, ascending.
  std::vector<std::vector<vertex>> granted;
};

/// Event-driven execution of the protocol. Messages are delivered in order
/// of (delivery time, send sequence). Stops when no message is pending or
/// when a process would enter a round past max_rounds.
dist_run dist_simulate(const graph& g, std::uint64_t seed,
                       const delay_spec& delays, std::uint64_t max_rounds);

}  // namespace sinklock
