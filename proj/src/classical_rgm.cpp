#include "sinklock/classical_rgm.hpp"

#include <algorithm>
#include <string>

#include "sinklock/random.hpp"

namespace sinklock {

namespace {

std::map<class_id, std::size_t> positions(const resource_model& model,
                                          const std::vector<class_id>& order) {
  std::map<class_id, std::size_t> pos;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (!pos.emplace(order[k], k).second) {
      throw resource_error("class order repeats class " +
                           std::to_string(order[k]));
    }
  }
  for (auto r : model.classes()) {
    if (!pos.count(r)) {
      throw resource_error("class order is missing class " + std::to_string(r));
    }
  }
  if (pos.size() != model.classes().size()) {
    throw resource_error("class order names classes the model does not have");
  }
  return pos;
}

// -1 for a process that holds everything, else the position of its
// waiting class.
long level_of(const resource_model& model, process_id i,
              const std::vector<class_id>& order,
              const std::map<class_id, std::size_t>& pos) {
  auto r = waiting_class(model, i, order);
  return r ? static_cast<long>(pos.at(*r)) : -1L;
}

}  // namespace

std::optional<class_id> waiting_class(const resource_model& model,
                                      process_id i,
                                      const std::vector<class_id>& class_order) {
  for (auto it = class_order.rbegin(); it != class_order.rend(); ++it) {
    if (model.granted(i, *it) < model.requested(i, *it)) return *it;
  }
  return std::nullopt;
}

std::map<class_id, std::vector<process_id>> waiting_sets(
    const resource_model& model, const std::vector<class_id>& class_order) {
  std::map<class_id, std::vector<process_id>> out;
  for (auto r : model.classes()) out[r];
  for (auto i : model.processes()) {
    if (auto r = waiting_class(model, i, class_order)) out[*r].push_back(i);
  }
  return out;
}

order_family classical_order_family(const resource_model& model,
                                    const std::vector<class_id>& class_order) {
  const auto pos = positions(model, class_order);
  std::map<process_id, long> level;
  for (auto i : model.processes()) level[i] = level_of(model, i, class_order, pos);

  order_family family;
  for (auto r : model.classes()) {
    auto members = model.requesters(r);
    if (members.empty()) continue;
    std::sort(members.begin(), members.end(), [&](process_id a, process_id b) {
      if (level[a] != level[b]) return level[a] > level[b];
      return a < b;
    });
    family.set(r, strict_order::chain(members));
  }
  return family;
}

classical_run classical_linear_order_rgm(resource_model model,
                                         const std::vector<class_id>& class_order,
                                         std::uint64_t seed,
                                         std::uint64_t max_steps) {
  const auto pos = positions(model, class_order);
  if (max_steps == 0) {
    std::uint64_t actions = 0;
    for (auto i : model.processes()) actions += model.requests_of(i).size() + 1;
    max_steps = 100 * actions + 100;
  }

  classical_run run;
  std::uint64_t step = 0;
  while (!model.processes().empty() && step < max_steps) {
    ++step;
    classical_step snapshot;
    snapshot.step = step;
    snapshot.model = model;
    snapshot.family = classical_order_family(model, class_order);
    snapshot.first_event = run.events.events.size();
    run.events.push(trace_event::round_start(step));

    const auto processes = model.processes();
    std::map<process_id, std::optional<class_id>> waiting;
    for (auto i : processes) waiting[i] = waiting_class(model, i, class_order);

    auto coin = [&](process_id i, std::uint64_t salt) {
      return (counter_hash(seed, step, i, salt) & 1) != 0;
    };

    // Releases.
    std::vector<process_id> finished;
    for (auto i : processes)
      if (!waiting[i]) finished.push_back(i);
    std::vector<process_id> releasing;
    for (auto i : finished)
      if (coin(i, 0)) releasing.push_back(i);

    // Grants are decided against the outstanding sets left after releases.
    auto eligible_grants = [&](const std::vector<process_id>& released) {
      std::vector<process_id> out;
      for (auto i : processes) {
        if (!waiting[i]) continue;
        const auto r = *waiting[i];
        auto live = snapshot.family.find(r)->ground();
        for (auto gone : released) std::erase(live, gone);
        const auto maxima = snapshot.family.find(r)->maximal(live);
        const units need = model.requested(i, r) - model.granted(i, r);
        if (std::find(maxima.begin(), maxima.end(), i) != maxima.end() &&
            model.available(r) >= need) {
          out.push_back(i);
        }
      }
      return out;
    };

    auto grantable = eligible_grants(releasing);
    std::vector<process_id> granting;
    for (auto i : grantable)
      if (coin(i, 1)) granting.push_back(i);

    if (releasing.empty() && granting.empty()) {
      if (!finished.empty()) {
        releasing.push_back(finished.front());
      } else if (!grantable.empty()) {
        granting.push_back(grantable.front());
      } else {
        run.steps.push_back(std::move(snapshot));
        run.steps.back().end_event = run.events.events.size();
        break;  // no action possible: deadlock
      }
    }

    for (auto i : releasing) {
      model.release_all(i);
      run.events.push(trace_event::released(step, i));
      run.events.push(trace_event::terminated(step, i));
    }
    for (auto i : releasing) model.remove_process(i);
    for (auto i : granting) {
      const auto r = *waiting[i];
      model.grant(i, r, model.requested(i, r) - model.granted(i, r));
      run.events.push(trace_event::granted_class(step, i, r));
    }
    model.check_invariants();
    snapshot.end_event = run.events.events.size();
    run.steps.push_back(std::move(snapshot));
  }
  run.status = model.processes().empty() ? run_status::complete
                                         : run_status::incomplete;
  return run;
}

}  // namespace sinklock
