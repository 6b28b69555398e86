#include "sinklock/order.hpp"

#include <algorithm>
#include <string>

namespace sinklock {

namespace {

std::vector<process_id> normalized_ground(std::vector<process_id> ground) {
  std::sort(ground.begin(), ground.end());
  if (std::adjacent_find(ground.begin(), ground.end()) != ground.end()) {
    throw order_error("ground set contains a repeated element");
  }
  return ground;
}

}  // namespace

std::size_t strict_order::index_of(process_id i) const {
  auto it = std::lower_bound(ground_.begin(), ground_.end(), i);
  if (it == ground_.end() || *it != i) {
    throw order_error("process " + std::to_string(i) +
                      " is not in the ground set");
  }
  return static_cast<std::size_t>(it - ground_.begin());
}

bool strict_order::contains(process_id i) const {
  return std::binary_search(ground_.begin(), ground_.end(), i);
}

strict_order strict_order::from_relation(std::vector<process_id> ground,
                                         const std::vector<process_pair>& less) {
  strict_order o;
  o.ground_ = normalized_ground(std::move(ground));
  const std::size_t n = o.ground_.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [lo, hi] : less) {
    succ[o.index_of(lo)].push_back(o.index_of(hi));
  }

  // Closure by a search from every element.
  o.above_.assign(n, std::vector<bool>(n, false));
  std::vector<std::size_t> stack;
  for (std::size_t a = 0; a < n; ++a) {
    stack.assign(succ[a].begin(), succ[a].end());
    while (!stack.empty()) {
      const auto b = stack.back();
      stack.pop_back();
      if (o.above_[a][b]) continue;
      o.above_[a][b] = true;
      for (auto c : succ[b]) stack.push_back(c);
    }
    if (o.above_[a][a]) {
      throw order_error("relation is not irreflexive: process " +
                        std::to_string(o.ground_[a]) + " lies on a cycle");
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!o.above_[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c) {
        if (o.above_[a][c] && o.above_[c][b]) covered = false;
      }
      if (covered) o.covers_.emplace_back(o.ground_[a], o.ground_[b]);
    }
  }
  return o;
}

strict_order strict_order::from_covers(std::vector<process_id> ground,
                                       const std::vector<process_pair>& covers) {
  auto o = from_relation(std::move(ground), covers);
  auto given = covers;
  std::sort(given.begin(), given.end());
  given.erase(std::unique(given.begin(), given.end()), given.end());
  if (given != o.covers_) {
    throw order_error("given pairs are not the covering pairs of their closure");
  }
  return o;
}

strict_order strict_order::chain(const std::vector<process_id>& lowest_first) {
  strict_order o;
  o.ground_ = normalized_ground(lowest_first);
  const std::size_t n = o.ground_.size();
  std::vector<std::size_t> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    rank[o.index_of(lowest_first[pos])] = pos;
  }
  o.above_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) o.above_[a][b] = rank[a] < rank[b];
  for (std::size_t pos = 0; pos + 1 < n; ++pos) {
    o.covers_.emplace_back(lowest_first[pos], lowest_first[pos + 1]);
  }
  std::sort(o.covers_.begin(), o.covers_.end());
  return o;
}

bool strict_order::less(process_id a, process_id b) const {
  return above_[index_of(a)][index_of(b)];
}

std::vector<process_id> strict_order::maximal(
    const std::vector<process_id>& subset) const {
  std::vector<std::size_t> members;
  for (auto i : subset)
    if (contains(i)) members.push_back(index_of(i));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<process_id> out;
  for (auto a : members) {
    bool dominated = false;
    for (auto b : members) {
      if (above_[a][b]) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(ground_[a]);
  }
  return out;
}

order_family::order_family(std::vector<class_order> orders) {
  for (auto& co : orders) set(co.resource_class, std::move(co.order));
}

void order_family::set(class_id r, strict_order order) {
  auto it = std::lower_bound(
      orders_.begin(), orders_.end(), r,
      [](const class_order& co, class_id id) { return co.resource_class < id; });
  if (it != orders_.end() && it->resource_class == r) {
    it->order = std::move(order);
  } else {
    orders_.insert(it, class_order{r, std::move(order)});
  }
}

const strict_order* order_family::find(class_id r) const {
  auto it = std::lower_bound(
      orders_.begin(), orders_.end(), r,
      [](const class_order& co, class_id id) { return co.resource_class < id; });
  if (it == orders_.end() || it->resource_class != r) return nullptr;
  return &it->order;
}

void order_family::check_against(const resource_model& model) const {
  std::size_t expected = 0;
  for (auto r : model.classes()) {
    const auto requesters = model.requesters(r);
    if (requesters.empty()) continue;
    ++expected;
    const auto* o = find(r);
    if (!o) {
      throw order_error("order family has no order for class " +
                        std::to_string(r));
    }
    if (o->ground() != requesters) {
      throw order_error("ground set of class " + std::to_string(r) +
                        " differs from its requesters");
    }
  }
  if (expected != orders_.size()) {
    throw order_error("order family has orders for classes without requesters");
  }
}

nlohmann::ordered_json to_json(const order_family& family) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& co : family.orders()) {
    nlohmann::ordered_json j;
    j["class_id"] = co.resource_class;
    j["ground"] = co.order.ground();
    auto covers = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : co.order.covers()) covers.push_back({lo, hi});
    j["covers"] = std::move(covers);
    out.push_back(std::move(j));
  }
  return out;
}

order_family order_family_from_json(const nlohmann::json& j) {
  order_family family;
  for (const auto& entry : j) {
    std::vector<process_pair> covers;
    for (const auto& pair : entry.at("covers")) {
      covers.emplace_back(pair.at(0).get<process_id>(),
                          pair.at(1).get<process_id>());
    }
    family.set(entry.at("class_id").get<class_id>(),
               strict_order::from_covers(
                   entry.at("ground").get<std::vector<process_id>>(), covers));
  }
  return family;
}

}  // namespace sinklock
