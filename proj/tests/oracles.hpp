#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dtsched/algebra.hpp"
#include "dtsched/knapsack.hpp"
#include "dtsched/reservation.hpp"

namespace oracle {

// Tries every assignment of every item to "rejected" or one of the paths.
inline std::int64_t enumerate_knapsack(const dtsched::knapsack::Instance& inst) {
  const std::size_t n = inst.items.size();
  const std::size_t k = inst.paths.size();
  std::vector<std::size_t> choice(n, 0);  // 0 = rejected, j + 1 = path j
  std::int64_t best = 0;
  while (true) {
    std::vector<std::int64_t> load(k, 0);
    std::int64_t profit = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (choice[i] == 0) continue;
      load[choice[i] - 1] += inst.items[i].size;
      ok = load[choice[i] - 1] <= inst.paths[choice[i] - 1].capacity;
      profit += inst.items[i].profit;
    }
    if (ok) best = std::max(best, profit);
    std::size_t pos = 0;
    while (pos < n && choice[pos] == k) choice[pos++] = 0;
    if (pos == n) break;
    ++choice[pos];
  }
  return best;
}

// Random instance whose sizes are powers of `base` not above max_size.
inline dtsched::knapsack::Instance random_knapsack(std::mt19937_64& rng, std::size_t max_items, std::size_t max_paths,
                                                   std::int64_t base, std::int64_t max_size, std::int64_t max_profit,
                                                   std::int64_t max_capacity) {
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  std::vector<std::int64_t> sizes{1};
  while (sizes.back() * base <= max_size) sizes.push_back(sizes.back() * base);
  dtsched::knapsack::Instance inst;
  const auto n = uni(0, static_cast<std::int64_t>(max_items));
  const auto k = uni(1, static_cast<std::int64_t>(max_paths));
  for (std::int64_t i = 0; i < n; ++i) {
    inst.items.push_back({"i" + std::to_string(i), sizes[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(sizes.size()) - 1))],
                          uni(1, max_profit)});
  }
  for (std::int64_t j = 0; j < k; ++j) inst.paths.push_back({"p" + std::to_string(j), uni(0, max_capacity)});
  return inst;
}

// Plain array: updates touch every cell, queries fold left to right.
template <class A>
class NaiveArray {
 public:
  using V = typename A::value_type;
  using U = typename A::update_type;
  explicit NaiveArray(std::vector<V> v) : v_(std::move(v)) {}
  void update(const U& u, std::size_t a, std::size_t b) {
    for (std::size_t p = a; p <= b; ++p) v_[p] = A::apply(u, v_[p]);
  }
  V query(std::size_t a, std::size_t b) const {
    V q = v_[a];
    for (std::size_t p = a + 1; p <= b; ++p) q = A::combine(q, v_[p]);
    return q;
  }
  const std::vector<V>& cells() const { return v_; }

 private:
  std::vector<V> v_;
};

// Best segment sum (empty allowed) over every (q, r) pair of cv[a..b].
inline std::int64_t brute_max_segment(const std::vector<std::int64_t>& cv, std::size_t a, std::size_t b) {
  std::int64_t best = 0;
  for (std::size_t q = a; q <= b; ++q) {
    std::int64_t sum = 0;
    for (std::size_t r = q; r <= b; ++r) {
      sum += cv[r];
      best = std::max(best, sum);
    }
  }
  return best;
}

inline dtsched::bp::SegTuple brute_seg(const std::vector<std::int64_t>& cv, std::size_t a, std::size_t b) {
  dtsched::bp::SegTuple s;
  std::int64_t run = 0;
  for (std::size_t p = a; p <= b; ++p) {
    run += cv[p];
    s.maxlsum = std::max(s.maxlsum, run);
  }
  s.totalsum = run;
  run = 0;
  for (std::size_t p = b + 1; p-- > a;) {
    run += cv[p];
    s.maxrsum = std::max(s.maxrsum, run);
  }
  s.maxsum = brute_max_segment(cv, a, b);
  return s;
}

// Per-slot usage vector with the same earliest-fit policy.
class NaiveSlots {
 public:
  NaiveSlots(std::int64_t n, std::int64_t cap) : use_(static_cast<std::size_t>(n), 0), cap_(cap) {}
  std::optional<std::int64_t> admit(const dtsched::reservation::Request& r) {
    for (std::int64_t t = r.earliest_start; t + r.duration <= r.latest_finish; ++t) {
      bool fits = true;
      for (std::int64_t s = t; s < t + r.duration; ++s) fits = fits && use_[static_cast<std::size_t>(s)] + r.amount <= cap_;
      if (!fits) continue;
      for (std::int64_t s = t; s < t + r.duration; ++s) use_[static_cast<std::size_t>(s)] += r.amount;
      return t;
    }
    return std::nullopt;
  }
  void release(std::int64_t start, std::int64_t duration, std::int64_t amount) {
    for (std::int64_t s = start; s < start + duration; ++s) use_[static_cast<std::size_t>(s)] -= amount;
  }
  const std::vector<std::int64_t>& usage() const { return use_; }

 private:
  std::vector<std::int64_t> use_;
  std::int64_t cap_;
};

}  // namespace oracle
