#include "sinklock/resource_model.hpp"

#include <algorithm>
#include <string>

namespace sinklock {

void resource_model::add_class(class_id r, units capacity) {
  if (!capacity_.emplace(r, capacity).second) {
    throw resource_error("duplicate resource class " + std::to_string(r));
  }
  held_[r] = 0;
}

void resource_model::add_process(process_id i) {
  auto it = std::lower_bound(processes_.begin(), processes_.end(), i);
  if (it == processes_.end() || *it != i) processes_.insert(it, i);
}

bool resource_model::has_process(process_id i) const {
  return std::binary_search(processes_.begin(), processes_.end(), i);
}

units resource_model::capacity(class_id r) const {
  auto it = capacity_.find(r);
  if (it == capacity_.end()) {
    throw resource_error("unknown resource class " + std::to_string(r));
  }
  return it->second;
}

units resource_model::held(class_id r) const {
  auto it = held_.find(r);
  if (it == held_.end()) {
    throw resource_error("unknown resource class " + std::to_string(r));
  }
  return it->second;
}

std::vector<class_id> resource_model::classes() const {
  std::vector<class_id> out;
  out.reserve(capacity_.size());
  for (const auto& [r, cap] : capacity_) out.push_back(r);
  return out;
}

resource_model::demand& resource_model::at(process_id i, class_id r) {
  return demands_[{i, r}];
}

const resource_model::demand* resource_model::find(process_id i,
                                                   class_id r) const {
  auto it = demands_.find({i, r});
  return it == demands_.end() ? nullptr : &it->second;
}

void resource_model::set_request(process_id i, class_id r, units requested) {
  if (requested > capacity(r)) {
    throw resource_error("process " + std::to_string(i) + " requests " +
                         std::to_string(requested) + " units of class " +
                         std::to_string(r) + " with capacity " +
                         std::to_string(capacity(r)));
  }
  add_process(i);
  auto& d = at(i, r);
  if (d.granted > requested) {
    throw resource_error("request below current grant");
  }
  d.requested = requested;
}

units resource_model::requested(process_id i, class_id r) const {
  const auto* d = find(i, r);
  return d ? d->requested : 0;
}

units resource_model::granted(process_id i, class_id r) const {
  const auto* d = find(i, r);
  return d ? d->granted : 0;
}

void resource_model::grant(process_id i, class_id r, units amount) {
  auto& d = at(i, r);
  if (d.granted + amount > d.requested) {
    throw resource_error("grant of " + std::to_string(amount) +
                         " units of class " + std::to_string(r) +
                         " to process " + std::to_string(i) +
                         " exceeds its request");
  }
  if (amount > available(r)) {
    throw resource_error("class " + std::to_string(r) + " double-granted: " +
                         std::to_string(amount) + " units wanted by process " +
                         std::to_string(i) + ", " +
                         std::to_string(available(r)) + " available");
  }
  d.granted += amount;
  held_[r] += amount;
}

void resource_model::grant_all(process_id i) {
  for (auto r : requests_of(i)) {
    const auto& d = demands_.at({i, r});
    if (d.requested > d.granted) grant(i, r, d.requested - d.granted);
  }
}

void resource_model::release_all(process_id i) {
  for (auto& [key, d] : demands_) {
    if (key.first != i || d.granted == 0) continue;
    held_[key.second] -= d.granted;
    d.granted = 0;
  }
}

void resource_model::remove_process(process_id i) {
  if (holds_anything(i)) {
    throw resource_error("cannot remove process " + std::to_string(i) +
                         " while it holds resources");
  }
  for (auto it = demands_.begin(); it != demands_.end();) {
    it = it->first.first == i ? demands_.erase(it) : std::next(it);
  }
  auto it = std::lower_bound(processes_.begin(), processes_.end(), i);
  if (it != processes_.end() && *it == i) processes_.erase(it);
}

std::vector<process_id> resource_model::requesters(class_id r) const {
  std::vector<process_id> out;
  for (const auto& [key, d] : demands_) {
    if (key.second == r && d.requested > 0) out.push_back(key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<class_id> resource_model::requests_of(process_id i) const {
  std::vector<class_id> out;
  for (auto it = demands_.lower_bound({i, 0});
       it != demands_.end() && it->first.first == i; ++it) {
    if (it->second.requested > 0) out.push_back(it->first.second);
  }
  return out;
}

bool resource_model::fully_granted(process_id i) const {
  for (auto it = demands_.lower_bound({i, 0});
       it != demands_.end() && it->first.first == i; ++it) {
    if (it->second.granted < it->second.requested) return false;
  }
  return true;
}

bool resource_model::holds_anything(process_id i) const {
  for (auto it = demands_.lower_bound({i, 0});
       it != demands_.end() && it->first.first == i; ++it) {
    if (it->second.granted > 0) return true;
  }
  return false;
}

void resource_model::check_invariants() const {
  std::map<class_id, units> total;
  for (const auto& [key, d] : demands_) {
    const auto cap = capacity(key.second);
    if (d.granted > d.requested || d.requested > cap) {
      throw resource_error("process " + std::to_string(key.first) +
                           " class " + std::to_string(key.second) +
                           ": granted <= requested <= capacity violated");
    }
    total[key.second] += d.granted;
  }
  for (const auto& [r, cap] : capacity_) {
    if (total[r] > cap || total[r] != held_.at(r)) {
      throw resource_error("class " + std::to_string(r) +
                           ": granted units exceed capacity");
    }
  }
}

wait_for_digraph build_wait_for(const resource_model& model) {
  wait_for_digraph out;
  out.vertices = model.processes();
  for (auto r : model.classes()) {
    std::vector<process_id> waiting;
    std::vector<process_id> holders;
    for (auto i : model.requesters(r)) {
      if (model.requested(i, r) > model.granted(i, r)) waiting.push_back(i);
      if (model.granted(i, r) > 0) holders.push_back(i);
    }
    for (auto i : waiting)
      for (auto j : holders)
        if (i != j) out.arcs.emplace_back(i, j);
  }
  std::sort(out.arcs.begin(), out.arcs.end());
  out.arcs.erase(std::unique(out.arcs.begin(), out.arcs.end()), out.arcs.end());
  return out;
}

}  // namespace sinklock
