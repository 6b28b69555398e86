#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sinklock/order.hpp"
#include "sinklock/resource_model.hpp"
#include "sinklock/rgm_engine.hpp"
#include "sinklock/trace.hpp"

namespace sinklock {

// Classical prevention by a fixed linear order of resource classes. The
// order is given lowest first; a process acquires its classes from the
// highest down, so it waits at the highest class it does not fully hold
// yet.

/// The class i is currently waiting at, or nullopt when i holds everything
/// it requested.
std::optional<class_id> waiting_class(const resource_model& model,
                                      process_id i,
                                      const std::vector<class_id>& class_order);

/// C_r for every class r: requesters of r that do not fully hold r but
/// fully hold every class above r.
std::map<class_id, std::vector<process_id>> waiting_sets(
    const resource_model& model, const std::vector<class_id>& class_order);

/// Per class, the chain over its requesters ranking a process waiting at a
/// lower class above one waiting at a higher class. Processes holding all
/// they asked for rank above every waiting process; ties go to the larger id.
order_family classical_order_family(const resource_model& model,
                                    const std::vector<class_id>& class_order);

struct classical_step {
  std::uint64_t step = 0;
  resource_model model;  // state at the start of the step
  order_family family;   // driving family at the start of the step
  std::size_t first_event = 0;
  std::size_t end_event = 0;  // one past the step's last event
};

struct classical_run {
  trace events;
  std::vector<classical_step> steps;
  run_status status = run_status::incomplete;
};

/// Each step first releases finished processes, then grants a process its
/// waiting class when it is maximal among that class's outstanding
/// requesters. The seed drives a coin per eligible action so different
/// seeds explore different interleavings; a step with eligible actions
/// always performs at least one. max_steps = 0 picks a bound proportional
/// to the total number of actions.
classical_run classical_linear_order_rgm(resource_model model,
                                         const std::vector<class_id>& class_order,
                                         std::uint64_t seed,
                                         std::uint64_t max_steps = 0);

}  // namespace sinklock
