#pragma once

// Maximum-profit scheduling of file transfers with divisible sizes on
// several capacity-limited paths (multiple knapsack with divisible item
// sizes). Solvers:
//
//   solve_heuristic        first fit by decreasing size, then repeated
//                          replacement of one packed item by a better subset
//                          of unpacked smaller items
//   solve_greedy1          fill knapsacks one at a time, each optimally
//   solve_sorted_first_fit sort by a criterion, then first fit
//   solve_exact_dp         multidimensional DP over all capacity vectors
//
// All solvers are pure functions of the instance and deterministic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtsched/error.hpp"

namespace dtsched::knapsack {

struct Item {
  std::string id;
  std::int64_t size = 1;
  std::int64_t profit = 1;

  friend bool operator==(const Item&, const Item&) = default;
};

struct Path {
  std::string id;
  std::int64_t capacity = 0;

  friend bool operator==(const Path&, const Path&) = default;
};

struct Instance {
  std::vector<Item> items;
  std::vector<Path> paths;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Item `item` runs on path `path` during [start, start + size).
struct Assignment {
  std::size_t item = 0;
  std::size_t path = 0;
  std::int64_t start = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Accepted items, ordered by item index. Items without an assignment are
// rejected.
struct Solution {
  std::vector<Assignment> assignments;
  std::int64_t total_profit = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

inline constexpr std::ptrdiff_t kRejected = -1;

// Throws InvalidInstance unless sizes/profits are positive, capacities are
// non-negative, there is at least one path and the sorted sizes form a
// divisibility chain.
inline void validate_instance(const Instance& instance) {
  if (instance.paths.empty()) throw InvalidInstance("instance has no paths");
  for (std::size_t j = 0; j < instance.paths.size(); ++j) {
    if (instance.paths[j].capacity < 0)
      throw InvalidInstance("path " + std::to_string(j) + " has negative capacity");
  }
  std::vector<std::int64_t> sizes;
  sizes.reserve(instance.items.size());
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const Item& item = instance.items[i];
    if (item.size < 1) throw InvalidInstance("item " + std::to_string(i) + " has size < 1");
    if (item.profit < 1) throw InvalidInstance("item " + std::to_string(i) + " has profit < 1");
    sizes.push_back(item.size);
  }
  std::sort(sizes.begin(), sizes.end());
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] % sizes[i - 1] != 0) {
      throw InvalidInstance("item sizes are not divisible: " + std::to_string(sizes[i - 1]) +
                            " does not divide " + std::to_string(sizes[i]));
    }
  }
}

// Builds a Solution from a per-item path choice. Accepted items on a path are
// packed back to back from time 0 in decreasing size order (ties by index).
inline Solution make_solution(const Instance& instance, std::span<const std::ptrdiff_t> path_of) {
  std::vector<std::vector<std::size_t>> per_path(instance.paths.size());
  for (std::size_t i = 0; i < path_of.size(); ++i) {
    if (path_of[i] != kRejected) per_path[static_cast<std::size_t>(path_of[i])].push_back(i);
  }
  Solution solution;
  for (std::size_t p = 0; p < per_path.size(); ++p) {
    auto& members = per_path[p];
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return instance.items[a].size > instance.items[b].size;
    });
    std::int64_t clock = 0;
    for (std::size_t i : members) {
      solution.assignments.push_back({i, p, clock});
      clock += instance.items[i].size;
      solution.total_profit += instance.items[i].profit;
    }
  }
  std::sort(solution.assignments.begin(), solution.assignments.end(),
            [](const Assignment& a, const Assignment& b) { return a.item < b.item; });
  return solution;
}

// ---------------------------------------------------------------------------
// Feasibility checking

struct Violation {
  enum class Kind { unknown_item, unknown_path, duplicate_item, outside_window, overlap, capacity, profit_mismatch };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  bool feasible = true;
  std::vector<Violation> violations;

  std::size_t count(Violation::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [&](const Violation& v) { return v.kind == kind; }));
  }
};

inline ValidationReport validate_solution(const Instance& instance, const Solution& solution) {
  ValidationReport report;
  auto flag = [&](Violation::Kind kind, std::string detail) {
    report.feasible = false;
    report.violations.push_back({kind, std::move(detail)});
  };

  std::vector<bool> seen(instance.items.size(), false);
  std::vector<std::int64_t> load(instance.paths.size(), 0);
  // (start, end, item) per path
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> intervals(instance.paths.size());
  std::int64_t profit = 0;

  for (const Assignment& a : solution.assignments) {
    if (a.item >= instance.items.size()) {
      flag(Violation::Kind::unknown_item, "item index " + std::to_string(a.item));
      continue;
    }
    if (a.path >= instance.paths.size()) {
      flag(Violation::Kind::unknown_path, "path index " + std::to_string(a.path));
      continue;
    }
    if (seen[a.item]) {
      flag(Violation::Kind::duplicate_item, "item " + instance.items[a.item].id + " assigned twice");
      continue;
    }
    seen[a.item] = true;
    const Item& item = instance.items[a.item];
    const std::int64_t end = a.start + item.size;
    if (a.start < 0 || end > instance.paths[a.path].capacity) {
      flag(Violation::Kind::outside_window, "item " + item.id + " runs outside [0, T] of path " +
                                                instance.paths[a.path].id);
    }
    load[a.path] += item.size;
    intervals[a.path].emplace_back(a.start, end);
    profit += item.profit;
  }

  for (std::size_t p = 0; p < instance.paths.size(); ++p) {
    if (load[p] > instance.paths[p].capacity) {
      flag(Violation::Kind::capacity, "path " + instance.paths[p].id + " load " + std::to_string(load[p]) +
                                          " exceeds capacity " + std::to_string(instance.paths[p].capacity));
    }
    auto& iv = intervals[p];
    std::sort(iv.begin(), iv.end());
    for (std::size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first < iv[i - 1].second) {
        flag(Violation::Kind::overlap, "overlapping transfers on path " + instance.paths[p].id);
      }
    }
  }
  if (profit != solution.total_profit) {
    flag(Violation::Kind::profit_mismatch, "reported " + std::to_string(solution.total_profit) + ", actual " +
                                               std::to_string(profit));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Optimal single knapsack

struct Fill {
  std::vector<std::size_t> chosen;  // indices into the input span, ascending
  std::int64_t profit = 0;
};

// 0/1 knapsack by a capacity-indexed DP. Among optimal subsets the one whose
// sorted index sequence is lexicographically smallest is returned.
inline Fill single_knapsack_fill(std::span<const Item> items, std::int64_t capacity) {
  Fill fill;
  if (capacity <= 0 || items.empty()) return fill;
  std::int64_t total = 0;
  for (const Item& item : items) total += item.size;
  const auto cap = static_cast<std::size_t>(std::min(capacity, total));
  const std::size_t n = items.size();
  const std::size_t width = cap + 1;

  // best[i * width + c]: best profit from items i.. with capacity c
  std::vector<std::int64_t> best((n + 1) * width, 0);
  for (std::size_t i = n; i-- > 0;) {
    const auto size = static_cast<std::size_t>(items[i].size);
    const std::int64_t* next = &best[(i + 1) * width];
    std::int64_t* row = &best[i * width];
    for (std::size_t c = 0; c <= cap; ++c) {
      row[c] = next[c];
      if (size <= c) row[c] = std::max(row[c], next[c - size] + items[i].profit);
    }
  }
  fill.profit = best[cap];
  std::size_t c = cap;
  for (std::size_t i = 0; i < n; ++i) {
    const auto size = static_cast<std::size_t>(items[i].size);
    if (size <= c && best[(i + 1) * width + c - size] + items[i].profit == best[i * width + c]) {
      fill.chosen.push_back(i);
      c -= size;
    }
  }
  return fill;
}

// ---------------------------------------------------------------------------
// Heuristic for divisible sizes

enum class ItemStatus { uninserted, inserted, replaced };

struct Replacement {
  std::size_t replaced = 0;             // item index leaving its knapsack
  std::vector<std::size_t> subset;      // item indices moving in
  std::int64_t gain = 0;                // subset profit - replaced profit
  std::size_t candidates = 0;           // nitems of the candidate DP
};

// Group-ordered bookkeeping for the replacement heuristic. Items are split
// into groups of equal size, groups ordered by decreasing size and members by
// decreasing profit (ties by index). Uninserted members of each group are
// kept in an intrusive doubly linked list so that walking the first few
// candidates and removing one is O(1).
class ReplacementState {
 public:
  explicit ReplacementState(const Instance& instance) : instance_(&instance) {
    validate_instance(instance);
    const std::size_t n = instance.items.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Item& x = instance.items[a];
      const Item& y = instance.items[b];
      if (x.size != y.size) return x.size > y.size;
      return x.profit > y.profit;
    });

    group_of_.assign(n, 0);
    rank_of_.assign(n, 0);
    for (std::size_t i : order) {
      const std::int64_t size = instance.items[i].size;
      if (group_size_.empty() || group_size_.back() != size) {
        group_size_.push_back(size);
        members_.emplace_back();
      }
      group_of_[i] = group_size_.size() - 1;
      rank_of_[i] = members_.back().size();
      members_.back().push_back(i);
    }

    status_.assign(n, ItemStatus::uninserted);
    path_of_.assign(n, kRejected);
    next_.assign(n, kNone);
    prev_.assign(n, kNone);
    head_.assign(members_.size(), kNone);
    for (std::size_t g = 0; g < members_.size(); ++g) {
      const auto& m = members_[g];
      if (m.empty()) continue;
      head_[g] = m.front();
      for (std::size_t r = 0; r + 1 < m.size(); ++r) {
        next_[m[r]] = m[r + 1];
        prev_[m[r + 1]] = m[r];
      }
    }
    remaining_.resize(instance.paths.size());
    for (std::size_t p = 0; p < instance.paths.size(); ++p) remaining_[p] = instance.paths[p].capacity;
  }

  // Stage one. Paths are tried in `path_order`; identity order when empty.
  // Returns the number of inserted items.
  std::size_t first_fit(std::span<const std::size_t> path_order = {}) {
    std::vector<std::size_t> order(path_order.begin(), path_order.end());
    if (order.empty()) {
      order.resize(remaining_.size());
      std::iota(order.begin(), order.end(), 0);
    }
    std::size_t inserted = 0;
    for (std::size_t g = 0; g < members_.size(); ++g) {
      for (std::size_t i : members_[g]) {
        for (std::size_t p : order) {
          if (remaining_[p] >= group_size_[g]) {
            remaining_[p] -= group_size_[g];
            insert(i, p);
            ++inserted;
            break;
          }
        }
      }
    }
    return inserted;
  }

  // Largest size currently inside a knapsack, 0 when nothing is packed.
  std::int64_t packed_max_size() const {
    std::int64_t smax = 0;
    for (std::size_t i = 0; i < status_.size(); ++i) {
      if (status_[i] == ItemStatus::inserted) smax = std::max(smax, instance_->items[i].size);
    }
    return smax;
  }

  // Upper bound on the candidate count for a given smax:
  // min(n, sum over groups smaller than smax of floor(smax / size)).
  std::size_t candidate_bound(std::int64_t smax) const {
    std::int64_t bound = 0;
    for (std::int64_t size : group_size_) {
      if (size < smax) bound += smax / size;
    }
    return std::min(static_cast<std::size_t>(bound), status_.size());
  }

  // Picks the packed item whose replacement by an optimal subset of
  // candidate items gains the most. Ties: smaller replaced profit, then
  // smaller (group, rank).
  std::optional<Replacement> find_best_replacement() const {
    const std::int64_t smax = packed_max_size();
    if (smax == 0) return std::nullopt;

    std::vector<std::size_t> cand;
    for (std::size_t g = members_.size(); g-- > 0;) {
      if (group_size_[g] >= smax) continue;
      const std::int64_t limit = smax / group_size_[g];
      std::int64_t chosen = 0;
      for (std::size_t i = head_[g]; i != kNone && chosen < limit; i = next_[i]) {
        cand.push_back(i);
        ++chosen;
      }
    }
    if (cand.empty()) return std::nullopt;

    const std::size_t nitems = cand.size();
    const auto width = static_cast<std::size_t>(smax) + 1;
    // table[i * width + c]: best profit from the first i candidates within c
    std::vector<std::int64_t> table((nitems + 1) * width, 0);
    for (std::size_t i = 1; i <= nitems; ++i) {
      const Item& item = instance_->items[cand[i - 1]];
      const auto size = static_cast<std::size_t>(item.size);
      const std::int64_t* prev = &table[(i - 1) * width];
      std::int64_t* row = &table[i * width];
      for (std::size_t c = 0; c < width; ++c) {
        row[c] = prev[c];
        if (c >= size) row[c] = std::max(row[c], prev[c - size] + item.profit);
      }
    }
    const std::int64_t* last = &table[nitems * width];

    std::optional<std::size_t> best;
    std::int64_t best_gain = 0;
    for (std::size_t i = 0; i < status_.size(); ++i) {
      if (status_[i] != ItemStatus::inserted) continue;
      const Item& item = instance_->items[i];
      const std::int64_t gain = last[static_cast<std::size_t>(item.size)] - item.profit;
      if (!best) {
        best = i;
        best_gain = gain;
        continue;
      }
      const Item& incumbent = instance_->items[*best];
      const auto key = [&](std::size_t x) { return std::pair{group_of_[x], rank_of_[x]}; };
      if (gain > best_gain ||
          (gain == best_gain && (item.profit < incumbent.profit ||
                                 (item.profit == incumbent.profit && key(i) < key(*best))))) {
        best = i;
        best_gain = gain;
      }
    }
    if (!best || best_gain <= 0) return std::nullopt;

    Replacement r;
    r.replaced = *best;
    r.gain = best_gain;
    r.candidates = nitems;
    auto c = static_cast<std::size_t>(instance_->items[*best].size);
    for (std::size_t i = nitems; i > 0; --i) {
      if (table[i * width + c] != table[(i - 1) * width + c]) {
        r.subset.push_back(cand[i - 1]);
        c -= static_cast<std::size_t>(instance_->items[cand[i - 1]].size);
      }
    }
    std::sort(r.subset.begin(), r.subset.end());
    return r;
  }

  // Moves the subset into the replaced item's knapsack. The replaced item is
  // never reconsidered; any slack it leaves stays unused.
  void apply(const Replacement& r) {
    const auto path = static_cast<std::size_t>(path_of_[r.replaced]);
    for (std::size_t i : r.subset) insert(i, path);
    status_[r.replaced] = ItemStatus::replaced;
    path_of_[r.replaced] = kRejected;
  }

  ItemStatus status(std::size_t item) const { return status_[item]; }
  std::ptrdiff_t path_of(std::size_t item) const { return path_of_[item]; }
  std::size_t group_of(std::size_t item) const { return group_of_[item]; }
  std::size_t rank_of(std::size_t item) const { return rank_of_[item]; }
  std::size_t group_count() const { return group_size_.size(); }
  std::int64_t group_size(std::size_t g) const { return group_size_[g]; }

  // First uninserted member of group g, if any.
  std::optional<std::size_t> first_item(std::size_t g) const {
    if (head_[g] == kNone) return std::nullopt;
    return head_[g];
  }

  Solution solution() const { return make_solution(*instance_, path_of_); }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void insert(std::size_t i, std::size_t path) {
    status_[i] = ItemStatus::inserted;
    path_of_[i] = static_cast<std::ptrdiff_t>(path);
    unlink(i);
  }

  void unlink(std::size_t i) {
    const std::size_t g = group_of_[i];
    if (prev_[i] != kNone) next_[prev_[i]] = next_[i];
    else head_[g] = next_[i];
    if (next_[i] != kNone) prev_[next_[i]] = prev_[i];
    prev_[i] = next_[i] = kNone;
  }

  const Instance* instance_;
  std::vector<std::int64_t> group_size_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> group_of_;
  std::vector<std::size_t> rank_of_;
  std::vector<ItemStatus> status_;
  std::vector<std::ptrdiff_t> path_of_;
  std::vector<std::size_t> next_;
  std::vector<std::size_t> prev_;
  std::vector<std::size_t> head_;
  std::vector<std::int64_t> remaining_;
};

struct IterationRecord {
  std::int64_t smax = 0;
  std::size_t candidates = 0;
  std::size_t candidate_bound = 0;
  std::int64_t gain = 0;
};

struct HeuristicRun {
  Solution solution;
  std::size_t stage1_inserted = 0;
  // (group, rank) of every item packed by stage one, in insertion order
  std::vector<std::pair<std::size_t, std::size_t>> stage1_items;
  std::vector<IterationRecord> iterations;
};

inline HeuristicRun run_heuristic(const Instance& instance, std::span<const std::size_t> path_order = {}) {
  ReplacementState state(instance);
  HeuristicRun run;
  run.stage1_inserted = state.first_fit(path_order);
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    if (state.status(i) == ItemStatus::inserted) run.stage1_items.emplace_back(state.group_of(i), state.rank_of(i));
  }
  std::sort(run.stage1_items.begin(), run.stage1_items.end());

  while (auto r = state.find_best_replacement()) {
    const std::int64_t smax = state.packed_max_size();
    run.iterations.push_back({smax, r->candidates, state.candidate_bound(smax), r->gain});
    state.apply(*r);
  }
  run.solution = state.solution();
  return run;
}

inline Solution solve_heuristic(const Instance& instance) { return run_heuristic(instance).solution; }

// ---------------------------------------------------------------------------
// Baselines

// Knapsacks in decreasing capacity (ties by index), each filled optimally from
// the items still left.
inline Solution solve_greedy1(const Instance& instance) {
  validate_instance(instance);
  std::vector<std::size_t> paths(instance.paths.size());
  std::iota(paths.begin(), paths.end(), 0);
  std::stable_sort(paths.begin(), paths.end(), [&](std::size_t a, std::size_t b) {
    const Path& x = instance.paths[a];
    const Path& y = instance.paths[b];
    return x.capacity != y.capacity ? x.capacity > y.capacity : x.id < y.id;
  });

  std::vector<std::ptrdiff_t> path_of(instance.items.size(), kRejected);
  std::vector<std::size_t> left(instance.items.size());
  std::iota(left.begin(), left.end(), 0);
  for (std::size_t p : paths) {
    if (left.empty()) break;
    std::vector<Item> pool;
    pool.reserve(left.size());
    for (std::size_t i : left) pool.push_back(instance.items[i]);
    const Fill fill = single_knapsack_fill(pool, instance.paths[p].capacity);
    std::vector<bool> taken(left.size(), false);
    for (std::size_t c : fill.chosen) {
      path_of[left[c]] = static_cast<std::ptrdiff_t>(p);
      taken[c] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < left.size(); ++c) {
      if (!taken[c]) rest.push_back(left[c]);
    }
    left = std::move(rest);
  }
  return make_solution(instance, path_of);
}

enum class SortCriterion { profit, profit_per_size, size_desc };

// Items sorted by decreasing criterion (ties: higher profit, then smaller
// id) and placed in the first path with room.
inline Solution solve_sorted_first_fit(const Instance& instance, SortCriterion criterion) {
  validate_instance(instance);
  const auto& items = instance.items;
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  auto before = [&](std::size_t a, std::size_t b) {
    const Item& x = items[a];
    const Item& y = items[b];
    switch (criterion) {
      case SortCriterion::profit:
        break;
      case SortCriterion::profit_per_size: {
        const auto lhs = static_cast<__int128>(x.profit) * y.size;
        const auto rhs = static_cast<__int128>(y.profit) * x.size;
        if (lhs != rhs) return lhs > rhs;
        break;
      }
      case SortCriterion::size_desc:
        if (x.size != y.size) return x.size > y.size;
        break;
    }
    if (x.profit != y.profit) return x.profit > y.profit;
    if (x.id != y.id) return x.id < y.id;
    return a < b;
  };
  std::sort(order.begin(), order.end(), before);

  std::vector<std::int64_t> remaining;
  for (const Path& p : instance.paths) remaining.push_back(p.capacity);
  std::vector<std::ptrdiff_t> path_of(items.size(), kRejected);
  for (std::size_t i : order) {
    for (std::size_t p = 0; p < remaining.size(); ++p) {
      if (remaining[p] >= items[i].size) {
        remaining[p] -= items[i].size;
        path_of[i] = static_cast<std::ptrdiff_t>(p);
        break;
      }
    }
  }
  return make_solution(instance, path_of);
}

// ---------------------------------------------------------------------------
// Exact oracle

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

// Optimal profit via the DP over (item prefix, fill level of every knapsack).
// Capacities are first clamped to the total item size, which leaves the
// optimum unchanged. Throws BudgetExceeded when the remaining product of
// (capacity + 1) exceeds `state_budget`.
inline std::int64_t solve_exact_dp(const Instance& instance, std::uint64_t state_budget = kDefaultStateBudget) {
  validate_instance(instance);
  std::int64_t total = 0;
  for (const Item& item : instance.items) total += item.size;

  const std::size_t k = instance.paths.size();
  std::vector<std::size_t> dim(k);
  std::vector<std::size_t> stride(k);
  std::uint64_t states = 1;
  for (std::size_t j = 0; j < k; ++j) {
    dim[j] = static_cast<std::size_t>(std::min(instance.paths[j].capacity, total)) + 1;
    stride[j] = static_cast<std::size_t>(states);
    if (states > state_budget / dim[j]) {
      throw BudgetExceeded("exact DP needs more than " + std::to_string(state_budget) + " states");
    }
    states *= dim[j];
  }

  std::vector<std::int64_t> best(static_cast<std::size_t>(states), 0);
  std::vector<std::size_t> coord(k);
  for (const Item& item : instance.items) {
    const auto size = static_cast<std::size_t>(item.size);
    // Descending sweep: every source state has a smaller flat index and is
    // therefore still the previous layer's value.
    for (std::size_t j = 0; j < k; ++j) coord[j] = dim[j] - 1;
    for (std::size_t s = best.size(); s-- > 0;) {
      std::int64_t value = best[s];
      for (std::size_t j = 0; j < k; ++j) {
        if (coord[j] >= size) value = std::max(value, best[s - size * stride[j]] + item.profit);
      }
      best[s] = value;
      for (std::size_t j = 0; j < k; ++j) {
        if (coord[j] > 0) {
          --coord[j];
          break;
        }
        coord[j] = dim[j] - 1;
      }
    }
  }
  return best.back();
}

}  // namespace dtsched::knapsack
