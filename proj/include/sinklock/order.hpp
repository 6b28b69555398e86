#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sinklock/resource_model.hpp"

namespace sinklock {

class order_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using process_pair = std::pair<process_id, process_id>;

/// Strict partial order over a finite ground set of process ids, stored as
/// its covering pairs (lo, hi) meaning lo < hi with nothing in between.
/// Higher elements have priority: maxima are served first.
class strict_order {
 public:
  strict_order() = default;

  /// Transitive closure of the given pairs. Throws order_error when an
  /// element lies outside the ground set or the pairs contain a cycle.
  static strict_order from_relation(std::vector<process_id> ground,
                                    const std::vector<process_pair>& less);

  /// Like from_relation, but additionally requires that the given pairs are
  /// exactly the covering pairs of their closure.
  static strict_order from_covers(std::vector<process_id> ground,
                                  const std::vector<process_pair>& covers);

  /// Linear order, lowest first.
  static strict_order chain(const std::vector<process_id>& lowest_first);

  const std::vector<process_id>& ground() const noexcept { return ground_; }
  const std::vector<process_pair>& covers() const noexcept { return covers_; }
  std::size_t size() const noexcept { return ground_.size(); }
  bool contains(process_id i) const;

  bool less(process_id a, process_id b) const;

  /// Max of the order restricted to subset (elements outside the ground set
  /// are ignored).
  std::vector<process_id> maximal(const std::vector<process_id>& subset) const;
  std::vector<process_id> maximal() const { return maximal(ground_); }

  /// Position of i in ground(); throws order_error when absent.
  std::size_t index_of(process_id i) const;

  bool operator==(const strict_order& o) const {
    return ground_ == o.ground_ && covers_ == o.covers_;
  }

 private:
  std::vector<process_id> ground_;
  std::vector<process_pair> covers_;
  std::vector<std::vector<bool>> above_;  // above_[a][b]: ground_[a] < ground_[b]
};

struct class_order {
  class_id resource_class = 0;
  strict_order order;

  bool operator==(const class_order&) const = default;
};

/// One strict order per resource class, kept sorted by class id.
class order_family {
 public:
  order_family() = default;
  explicit order_family(std::vector<class_order> orders);

  void set(class_id r, strict_order order);
  const strict_order* find(class_id r) const;
  const std::vector<class_order>& orders() const noexcept { return orders_; }
  bool empty() const noexcept { return orders_.empty(); }

  /// Throws order_error unless the classes match the model's classes with
  /// requesters, and each ground set equals that class's requesters.
  void check_against(const resource_model& model) const;

  bool operator==(const order_family&) const = default;

 private:
  std::vector<class_order> orders_;
};

/// [{"class_id": r, "ground": [...], "covers": [[lo, hi], ...]}, ...]
nlohmann::ordered_json to_json(const order_family& family);
order_family order_family_from_json(const nlohmann::json& j);

}  // namespace sinklock
