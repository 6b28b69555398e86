#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sinklock {

using process_id = std::uint32_t;
using class_id = std::uint32_t;
using units = std::uint32_t;

class resource_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Resource classes with capacities, and per (process, class) the units
/// requested and currently granted. Keeps granted <= requested <= capacity
/// and, per class, total granted <= capacity.
class resource_model {
 public:
  resource_model() = default;

  void add_class(class_id r, units capacity);
  void add_process(process_id i);
  /// Adds the process if needed. requested must not exceed the capacity.
  void set_request(process_id i, class_id r, units requested);

  void grant(process_id i, class_id r, units amount);
  /// Grants everything still outstanding for i.
  void grant_all(process_id i);
  void release_all(process_id i);
  /// Drops i and all its requests; i must hold nothing.
  void remove_process(process_id i);

  const std::vector<process_id>& processes() const noexcept { return processes_; }
  std::vector<class_id> classes() const;
  bool has_process(process_id i) const;
  bool has_class(class_id r) const { return capacity_.count(r) != 0; }

  units capacity(class_id r) const;
  units requested(process_id i, class_id r) const;
  units granted(process_id i, class_id r) const;
  units held(class_id r) const;
  units available(class_id r) const { return capacity(r) - held(r); }

  /// P_r: processes with a positive request on r, ascending.
  std::vector<process_id> requesters(class_id r) const;
  /// Classes i requests, ascending.
  std::vector<class_id> requests_of(process_id i) const;
  bool fully_granted(process_id i) const;
  bool holds_anything(process_id i) const;

  void check_invariants() const;

 private:
  struct demand {
    units requested = 0;
    units granted = 0;
  };

  demand& at(process_id i, class_id r);
  const demand* find(process_id i, class_id r) const;

  std::vector<process_id> processes_;
  std::map<class_id, units> capacity_;
  std::map<class_id, units> held_;
  std::map<std::pair<process_id, class_id>, demand> demands_;
};

/// Arcs i -> j whenever i still needs units of a class that j holds.
struct wait_for_digraph {
  std::vector<process_id> vertices;
  std::vector<std::pair<process_id, process_id>> arcs;
};

wait_for_digraph build_wait_for(const resource_model& model);

}  // namespace sinklock
