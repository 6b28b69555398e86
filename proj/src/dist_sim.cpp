#include "sinklock/dist_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <sstream>

#include "sinklock/random.hpp"

namespace sinklock {

std::string_view to_string(message_kind k) noexcept {
  switch (k) {
    case message_kind::coin: return "coin";
    case message_kind::ack: return "ack";
    case message_kind::leave: return "leave";
  }
  return "?";
}

namespace {

link_state& link_to(process_state& s, vertex neighbor) {
  auto it = std::lower_bound(
      s.links.begin(), s.links.end(), neighbor,
      [](const link_state& l, vertex v) { return l.neighbor < v; });
  if (it == s.links.end() || it->neighbor != neighbor) {
    throw protocol_error("message from a non-neighbor");
  }
  return *it;
}

edge edge_between(vertex a, vertex b) { return {std::min(a, b), std::max(a, b)}; }

void send(protocol_result& r, message_kind kind, vertex to, bool reversed = false) {
  r.outgoing.push_back({kind, r.state.round, r.state.id, to, reversed});
}

void try_advance(protocol_result& r);

void try_decide(protocol_result& r) {
  auto& s = r.state;
  if (s.phase != process_phase::deciding) return;
  bool sink = true;
  for (const auto& l : s.links) {
    if (!l.live) continue;
    if (!l.outgoing) return;
    if (*l.outgoing) sink = false;
  }
  if (sink) {
    r.events.push_back(trace_event::granted(s.round, s.id));
    r.events.push_back(trace_event::released(s.round, s.id));
    r.events.push_back(trace_event::terminated(s.round, s.id));
    for (const auto& l : s.links)
      if (l.live) send(r, message_kind::leave, l.neighbor);
    for (const auto& l : s.links)
      if (l.live && !l.lower) send(r, message_kind::ack, l.neighbor);
    s.phase = process_phase::done;
    return;
  }
  for (const auto& l : s.links)
    if (l.live && !l.lower) send(r, message_kind::ack, l.neighbor);
  s.phase = process_phase::waiting;
  try_advance(r);
}

void enter_round(protocol_result& r, std::uint64_t round) {
  auto& s = r.state;
  s.round = round;
  s.phase = process_phase::deciding;
  r.events.push_back(trace_event::round_start(round));
  for (auto& l : s.links) {
    if (!l.live) continue;
    l.outgoing.reset();
    l.neighbor_left = false;
    l.resolved = false;
    if (l.lower) {
      const bool reversed = edge_coin(s.seed, round, s.id, l.neighbor);
      l.outgoing = !reversed;
      send(r, message_kind::coin, l.neighbor, reversed);
    } else if (l.early_round) {
      if (*l.early_round != round) throw protocol_error("stale buffered coin");
      l.outgoing = l.early_outgoing;
      l.early_round.reset();
      if (l.early_leave) {
        l.neighbor_left = true;
        l.resolved = true;
        l.early_leave = false;
      }
    }
  }
  try_decide(r);
}

void try_advance(protocol_result& r) {
  auto& s = r.state;
  if (s.phase != process_phase::waiting) return;
  for (const auto& l : s.links)
    if (l.live && !l.resolved) return;
  for (auto& l : s.links)
    if (l.live && l.neighbor_left) l.live = false;
  enter_round(r, s.round + 1);
}

}  // namespace

process_state initial_state(const graph& g, vertex v, std::uint64_t seed) {
  process_state s;
  s.id = v;
  s.seed = seed;
  for (const auto& inc : g.incident(v)) {
    link_state l;
    l.neighbor = inc.neighbor;
    l.lower = v < inc.neighbor;
    s.links.push_back(l);
  }
  std::sort(s.links.begin(), s.links.end(),
            [](const link_state& a, const link_state& b) {
              return a.neighbor < b.neighbor;
            });
  return s;
}

protocol_result protocol_start(process_state s) {
  if (s.phase != process_phase::idle) throw protocol_error("already started");
  protocol_result r{std::move(s), {}, {}};
  enter_round(r, 1);
  return r;
}

protocol_result protocol_step(process_state s, const message& m) {
  if (m.to != s.id) throw protocol_error("message delivered to the wrong process");
  protocol_result r{std::move(s), {}, {}};
  auto& st = r.state;
  if (st.phase == process_phase::idle) throw protocol_error("process not started");
  auto& l = link_to(st, m.from);
  if (st.phase == process_phase::done) {
    // Only the acks answering a departed lower endpoint's coins.
    if (m.kind != message_kind::ack || !l.lower || m.round != st.round) {
      throw protocol_error("unexpected message after termination");
    }
    return r;
  }
  if (!l.live) throw protocol_error("message on a retired link");

  switch (m.kind) {
    case message_kind::coin: {
      if (l.lower) throw protocol_error("coin from the upper endpoint");
      const bool outgoing = m.reversed;  // reversed: upper -> lower
      const vertex tail = outgoing ? st.id : m.from;
      const vertex head = outgoing ? m.from : st.id;
      r.events.push_back(trace_event::orientation_fixed(
          m.round, edge_between(st.id, m.from), tail, head));
      if (m.round == st.round && st.phase == process_phase::deciding &&
          !l.outgoing) {
        l.outgoing = outgoing;
        try_decide(r);
      } else if (m.round == st.round + 1 && st.phase == process_phase::waiting &&
                 !l.resolved && !l.early_round) {
        l.resolved = true;
        l.early_round = m.round;
        l.early_outgoing = outgoing;
        try_advance(r);
      } else {
        throw protocol_error("coin out of sequence");
      }
      break;
    }
    case message_kind::ack:
      if (!l.lower) throw protocol_error("ack from the lower endpoint");
      if (m.round != st.round || l.resolved) throw protocol_error("ack out of sequence");
      l.resolved = true;
      try_advance(r);
      break;
    case message_kind::leave:
      // A lower endpoint can finish the next round before this process
      // has entered it; its coin for that round is already buffered.
      if (m.round == st.round + 1 && !l.lower && l.early_round == m.round &&
          !l.early_leave) {
        l.early_leave = true;
        break;
      }
      if (m.round != st.round || l.neighbor_left) {
        throw protocol_error("leave out of sequence");
      }
      l.neighbor_left = true;
      if (!l.lower) l.resolved = true;
      try_advance(r);
      break;
  }
  return r;
}

delay_spec delay_spec::parse(std::string_view text, std::uint64_t seed) {
  auto number = [&](std::string_view part) {
    double x = 0.0;
    std::string buf(part);
    std::istringstream in(buf);
    in.imbue(std::locale::classic());
    in >> x;
    if (!in || !in.eof() || !std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument("bad delay value '" + buf + "'");
    }
    return x;
  };
  delay_spec d;
  d.seed = seed;
  if (text == "zero") return d;
  if (text.rfind("constant:", 0) == 0) {
    d.type = kind::constant;
    d.lo = d.hi = number(text.substr(9));
    return d;
  }
  if (text.rfind("uniform:", 0) == 0) {
    const auto rest = text.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("uniform delay needs uniform:<lo>:<hi>");
    }
    d.type = kind::uniform;
    d.lo = number(rest.substr(0, colon));
    d.hi = number(rest.substr(colon + 1));
    if (d.hi < d.lo) throw std::invalid_argument("uniform delay needs lo <= hi");
    return d;
  }
  throw std::invalid_argument("unknown delay '" + std::string(text) +
                              "' (zero, constant:<d>, uniform:<lo>:<hi>)");
}

std::string delay_spec::str() const {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  switch (type) {
    case kind::zero: out << "zero"; break;
    case kind::constant: out << "constant:" << lo; break;
    case kind::uniform: out << "uniform:" << lo << ':' << hi; break;
  }
  return out.str();
}

double delay_spec::sample(std::uint64_t message_seq) const {
  switch (type) {
    case kind::zero: return 0.0;
    case kind::constant: return lo;
    case kind::uniform:
      return lo + (hi - lo) * to_unit_interval(counter_hash(seed, message_seq, 0xDE1A));
  }
  return 0.0;
}

std::uint64_t dist_stats::messages() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [round, c] : per_round) total += c.total();
  return total;
}

namespace {

struct pending {
  double deliver_time;
  std::uint64_t seq;
  message msg;
  bool operator>(const pending& o) const {
    return deliver_time != o.deliver_time ? deliver_time > o.deliver_time
                                          : seq > o.seq;
  }
};

}  // namespace

dist_run dist_simulate(const graph& g, std::uint64_t seed,
                       const delay_spec& delays, std::uint64_t max_rounds) {
  if (g.vertex_count() == 0) {
    throw std::invalid_argument("simulation needs at least one process");
  }
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");

  const std::size_t n = g.vertex_count();
  std::vector<process_state> states;
  for (vertex v = 0; v < n; ++v) states.push_back(initial_state(g, v, seed));

  dist_run run;
  std::priority_queue<pending, std::vector<pending>, std::greater<>> queue;
  std::map<std::pair<vertex, vertex>, double> channel_clock;
  std::uint64_t seq = 0;
  std::uint64_t highest_round = 0;
  std::size_t done = 0;
  bool cut_off = false;
  double now = 0.0;

  auto absorb = [&](vertex v, protocol_result&& r) {
    if (r.state.phase != process_phase::done && r.state.round > max_rounds) {
      cut_off = true;
      return;
    }
    if (r.state.phase == process_phase::done &&
        states[v].phase != process_phase::done) {
      ++done;
    }
    states[v] = std::move(r.state);
    for (auto& e : r.events) {
      if (e.type == event_type::round_start) {
        if (e.round <= highest_round) continue;
        highest_round = e.round;
      }
      if (e.type == event_type::granted) {
        if (run.granted.size() < e.round) run.granted.resize(e.round);
        run.granted[e.round - 1].push_back(*e.process);
      }
      run.events.push(std::move(e));
    }
    for (const auto& m : r.outgoing) {
      auto& clock = channel_clock[{m.from, m.to}];
      const double deliver = std::max(clock, now + delays.sample(seq));
      clock = deliver;
      auto ev = trace_event{};
      ev.type = event_type::message;
      ev.round = m.round;
      ev.process = m.from;
      ev.on_edge = edge_between(m.from, m.to);
      ev.kind = std::string(to_string(m.kind));
      ev.send_time = now;
      ev.deliver_time = deliver;
      run.events.push(std::move(ev));
      auto& counts = run.stats.per_round[m.round];
      switch (m.kind) {
        case message_kind::coin: ++counts.coin; break;
        case message_kind::ack: ++counts.ack; break;
        case message_kind::leave: ++counts.leave; break;
      }
      queue.push({deliver, seq++, m});
    }
  };

  for (vertex v = 0; v < n && !cut_off; ++v) {
    absorb(v, protocol_start(states[v]));
  }
  while (!queue.empty() && !cut_off) {
    const auto p = queue.top();
    queue.pop();
    now = p.deliver_time;
    run.stats.simulated_time = now;
    absorb(p.msg.to, protocol_step(states[p.msg.to], p.msg));
  }
  for (auto& round : run.granted) std::sort(round.begin(), round.end());
  run.stats.rounds = highest_round;
  run.status = done == n ? run_status::complete : run_status::incomplete;
  return run;
}

}  // namespace sinklock
