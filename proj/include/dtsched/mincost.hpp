#pragma once

// Minimum-cost transfer of n consecutive unit-time files. File i occupies
// time [i-1, i] and can go over a default link at cost L_i or inside a lease
// [p, j] rented from a provider at (j - p) * C per slot. A provider's lease
// must contain its mandatory window [t1, t2] and last at most tmax slots;
// leases are pairwise disjoint and each provider is leased at most once.
//
// solve_min_cost runs the O(k * n) row DP (providers sorted by t2, lease
// start chosen through a suffix-minimum array), solve_min_cost_quadratic the
// same DP with the inner minimum scanned directly, and brute_force_min_cost
// enumerates every plan.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dtsched/error.hpp"

namespace dtsched::mincost {

struct Provider {
  std::string id;
  std::int64_t cost_per_slot = 0;
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t tmax = 1;

  friend bool operator==(const Provider&, const Provider&) = default;
};

struct Instance {
  std::int64_t n = 0;
  std::vector<std::int64_t> default_costs;
  std::vector<Provider> providers;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Provider `provider` (index into Instance::providers) leased over [from, to].
struct Lease {
  std::size_t provider = 0;
  std::int64_t from = 0;
  std::int64_t to = 0;

  friend bool operator==(const Lease&, const Lease&) = default;
};

struct CostPlan {
  std::int64_t total_cost = 0;
  std::vector<Lease> leases;                // ordered by time
  std::vector<std::int64_t> default_slots;  // 1-based file indices, ascending
  std::vector<std::size_t> skipped_providers;  // t2 > n, never usable

  friend bool operator==(const CostPlan&, const CostPlan&) = default;
};

// Sentinel for "no plan". Every finite total is at most n * n * max(C) + sum(L),
// which validate_instance keeps strictly below this value.
inline constexpr std::int64_t kInfinity = std::int64_t{1} << 62;

inline void validate_instance(const Instance& instance) {
  if (instance.n < 0) throw InvalidInstance("n must be non-negative");
  if (static_cast<std::int64_t>(instance.default_costs.size()) != instance.n) {
    throw InvalidInstance("default_costs has " + std::to_string(instance.default_costs.size()) +
                          " entries, expected " + std::to_string(instance.n));
  }
  __int128 sum_default = 0;
  for (std::int64_t l : instance.default_costs) {
    if (l < 0) throw InvalidInstance("default cost must be non-negative");
    sum_default += l;
  }
  std::int64_t max_cost = 0;
  for (std::size_t i = 0; i < instance.providers.size(); ++i) {
    const Provider& p = instance.providers[i];
    const std::string where = "provider " + std::to_string(i) + ": ";
    if (p.cost_per_slot < 0) throw InvalidInstance(where + "cost_per_slot must be non-negative");
    if (p.t1 < 0 || p.t1 > p.t2) throw InvalidInstance(where + "window must satisfy 0 <= t1 <= t2");
    if (p.tmax < 1) throw InvalidInstance(where + "tmax must be positive");
    if (p.t2 - p.t1 > p.tmax) throw InvalidInstance(where + "window longer than tmax");
    max_cost = std::max(max_cost, p.cost_per_slot);
  }
  const __int128 bound = static_cast<__int128>(instance.n) * instance.n * max_cost + sum_default;
  if (bound >= kInfinity) throw InvalidInstance("costs too large for exact 64-bit evaluation");
}

// Suffix minimum of prev_row[p] + (t1 - p) * C over q <= p <= t1, for
// q in [lo, t1] with lo = max(0, t2 - tmax). Entries of prev_row that are
// >= kInfinity are infeasible and stay infeasible.
struct MinpRow {
  std::int64_t lo = 0;
  std::vector<std::int64_t> value;   // value[q - lo]
  std::vector<std::int64_t> argmin;  // largest p attaining value[q - lo]

  std::int64_t at(std::int64_t q) const { return value[static_cast<std::size_t>(q - lo)]; }
};

inline MinpRow compute_minp(std::span<const std::int64_t> prev_row, const Provider& provider) {
  MinpRow row;
  row.lo = std::max<std::int64_t>(0, provider.t2 - provider.tmax);
  const std::int64_t hi = provider.t1;
  if (hi < row.lo || hi >= static_cast<std::int64_t>(prev_row.size())) return row;
  const auto len = static_cast<std::size_t>(hi - row.lo + 1);
  row.value.assign(len, kInfinity);
  row.argmin.assign(len, hi);
  for (std::int64_t q = hi; q >= row.lo; --q) {
    const auto idx = static_cast<std::size_t>(q - row.lo);
    const std::int64_t base = prev_row[static_cast<std::size_t>(q)];
    const std::int64_t here = base >= kInfinity ? kInfinity : base + (hi - q) * provider.cost_per_slot;
    if (q == hi || here < row.value[idx + 1]) {
      row.value[idx] = here;
      row.argmin[idx] = q;
    } else {
      row.value[idx] = row.value[idx + 1];
      row.argmin[idx] = row.argmin[idx + 1];
    }
  }
  return row;
}

namespace detail {

// DP value: cost first, then leased slots (fewer is preferred).
struct Cost {
  std::int64_t value = 0;
  std::int64_t slots = 0;

  bool infinite() const { return value >= kInfinity; }
  friend auto operator<=>(const Cost&, const Cost&) = default;
};

inline constexpr Cost kNoPlan{kInfinity, 0};

inline Cost add(Cost a, Cost b) {
  if (a.infinite() || b.infinite()) return kNoPlan;
  return {a.value + b.value, a.slots + b.slots};
}

inline Cost lease_cost(std::int64_t slots, std::int64_t per_slot) { return {slots * per_slot, slots}; }

enum Choice : std::uint8_t { kSkip = 0, kDefault = 1, kLease = 2, kPair = 3 };

// 2 bits per (stage, j) cell.
class ChoiceGrid {
 public:
  ChoiceGrid(std::size_t rows, std::size_t cols) : cols_(cols), bits_((rows * cols + 3) / 4, 0) {}
  void set(std::size_t r, std::size_t c, Choice v) {
    const std::size_t at = r * cols_ + c;
    auto& byte = bits_[at / 4];
    const unsigned shift = (at % 4) * 2;
    byte = static_cast<std::uint8_t>((byte & ~(3u << shift)) | (static_cast<unsigned>(v) << shift));
  }
  Choice get(std::size_t r, std::size_t c) const {
    const std::size_t at = r * cols_ + c;
    return static_cast<Choice>((bits_[at / 4] >> ((at % 4) * 2)) & 3u);
  }

 private:
  std::size_t cols_;
  std::vector<std::uint8_t> bits_;
};

// One DP row. Usually a single provider; providers sharing an identical
// point window [x, x] are merged into one stage because a plan may use two of
// them back to back (one ending at x, the next starting at x) in either
// order, which a fixed sort order cannot express.
struct Stage {
  std::vector<std::size_t> members;  // provider indices
  bool point_group = false;
  std::int64_t lo = 0;  // first j with a stored lease detail
  std::int64_t hi = -1;
};

struct LeaseDetail {
  std::size_t first = 0;   // provider ending at x (pair) or the only provider
  std::size_t second = 0;  // provider starting at x (pair only)
  std::int64_t from = 0;
};

inline std::vector<Stage> make_stages(const Instance& instance, std::vector<std::size_t>& skipped) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < instance.providers.size(); ++i) {
    if (instance.providers[i].t2 > instance.n) skipped.push_back(i);
    else order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Provider& x = instance.providers[a];
    const Provider& y = instance.providers[b];
    if (x.t2 != y.t2) return x.t2 < y.t2;
    return x.t1 < y.t1;
  });

  std::vector<Stage> stages;
  for (std::size_t i : order) {
    const Provider& p = instance.providers[i];
    const bool point = p.t1 == p.t2;
    if (point && !stages.empty() && stages.back().point_group &&
        instance.providers[stages.back().members.front()].t2 == p.t2) {
      stages.back().members.push_back(i);
    } else {
      stages.push_back({{i}, point, 0, -1});
    }
  }
  for (Stage& s : stages) {
    s.lo = instance.n + 1;
    for (std::size_t m : s.members) {
      const Provider& p = instance.providers[m];
      s.lo = std::min(s.lo, p.t2);
      s.hi = std::max(s.hi, std::min(instance.n, p.t1 + p.tmax));
    }
  }
  return stages;
}

// Best (value, p) for a lease of provider `p` ending exactly at its t1 and
// starting anywhere in [max(0, t2 - tmax), t1], i.e. min over that p-range
// of prev[p] + (t1 - p) * C. `Quadratic` scans the range for each query; the
// linear variant precomputes suffix minima once per provider.
struct SuffixMin {
  std::int64_t lo = 0;
  std::vector<Cost> value;
  std::vector<std::int64_t> arg;
};

inline SuffixMin suffix_min(std::span<const Cost> prev, const Provider& p) {
  SuffixMin s;
  s.lo = std::max<std::int64_t>(0, p.t2 - p.tmax);
  const std::int64_t hi = p.t1;
  s.value.assign(static_cast<std::size_t>(hi - s.lo + 1), kNoPlan);
  s.arg.assign(s.value.size(), hi);
  for (std::int64_t q = hi; q >= s.lo; --q) {
    const auto idx = static_cast<std::size_t>(q - s.lo);
    const Cost here = add(prev[static_cast<std::size_t>(q)], lease_cost(hi - q, p.cost_per_slot));
    if (q == hi || here < s.value[idx + 1]) {
      s.value[idx] = here;
      s.arg[idx] = q;
    } else {
      s.value[idx] = s.value[idx + 1];
      s.arg[idx] = s.arg[idx + 1];
    }
  }
  return s;
}

// min over max(0, j - tmax) <= p <= t1 of prev[p] + (j - p) * C, by scanning.
inline std::pair<Cost, std::int64_t> direct_lease(std::span<const Cost> prev, const Provider& p, std::int64_t j) {
  Cost best = kNoPlan;
  std::int64_t arg = p.t1;
  for (std::int64_t q = p.t1; q >= std::max<std::int64_t>(0, j - p.tmax); --q) {
    const Cost here = add(prev[static_cast<std::size_t>(q)], lease_cost(j - q, p.cost_per_slot));
    if (here < best) {
      best = here;
      arg = q;
    }
  }
  return {best, arg};
}

template <bool Quadratic>
CostPlan solve(const Instance& instance) {
  validate_instance(instance);
  CostPlan plan;
  const std::vector<Stage> stages = make_stages(instance, plan.skipped_providers);
  const auto n = static_cast<std::size_t>(instance.n);
  const auto& L = instance.default_costs;
  const auto& P = instance.providers;

  std::vector<Cost> prev(n + 1);
  std::vector<Cost> cur(n + 1);
  // With no providers only the default link exists.
  for (std::size_t j = 1; j <= n; ++j) prev[j] = {prev[j - 1].value + L[j - 1], 0};

  ChoiceGrid grid(stages.size() + 1, n + 1);
  std::vector<std::vector<LeaseDetail>> details(stages.size() + 1);

  for (std::size_t s = 0; s < stages.size(); ++s) {
    const Stage& stage = stages[s];
    const std::size_t row = s + 1;
    auto& detail = details[row];
    if (stage.hi >= stage.lo) detail.assign(static_cast<std::size_t>(stage.hi - stage.lo + 1), {});

    std::vector<SuffixMin> minp;
    if constexpr (!Quadratic) {
      for (std::size_t m : stage.members) minp.push_back(suffix_min(prev, P[m]));
    }

    // Pair option: best two "lease ending at x" values among the members.
    struct Ender {
      Cost value = kNoPlan;
      std::size_t member = 0;
      std::int64_t from = 0;
    };
    Ender e1, e2;
    const bool pairs = stage.point_group && stage.members.size() >= 2;
    const std::int64_t x = P[stage.members.front()].t2;
    if (pairs) {
      for (std::size_t idx = 0; idx < stage.members.size(); ++idx) {
        const Provider& p = P[stage.members[idx]];
        Ender e;
        e.member = idx;
        if constexpr (Quadratic) {
          std::tie(e.value, e.from) = direct_lease(prev, p, x);
        } else {
          e.value = minp[idx].value.front();
          e.from = minp[idx].arg.front();
        }
        if (e.value < e1.value) {
          e2 = e1;
          e1 = e;
        } else if (e.value < e2.value) {
          e2 = e;
        }
      }
    }

    cur[0] = prev[0];
    grid.set(row, 0, kSkip);
    for (std::size_t j = 0; j <= n; ++j) {
      const auto jj = static_cast<std::int64_t>(j);
      Cost best = prev[j];
      Choice choice = kSkip;
      if (j > 0) {
        const Cost via_default = add(cur[j - 1], {L[j - 1], 0});
        if (via_default < best) {
          best = via_default;
          choice = kDefault;
        }
      }
      if (jj < stage.lo || jj > stage.hi) {
        cur[j] = best;
        grid.set(row, j, choice);
        continue;
      }
      LeaseDetail& d = detail[static_cast<std::size_t>(jj - stage.lo)];
      for (std::size_t idx = 0; idx < stage.members.size(); ++idx) {
        const Provider& p = P[stage.members[idx]];
        if (jj < p.t2 || jj > p.t1 + p.tmax) continue;
        Cost lease;
        std::int64_t from;
        if constexpr (Quadratic) {
          std::tie(lease, from) = direct_lease(prev, p, jj);
        } else {
          const SuffixMin& m = minp[idx];
          const std::int64_t q = std::max<std::int64_t>(0, jj - p.tmax);
          const auto at = static_cast<std::size_t>(q - m.lo);
          lease = add(m.value[at], lease_cost(jj - p.t1, p.cost_per_slot));
          from = m.arg[at];
        }
        if (lease < best) {
          best = lease;
          choice = kLease;
          d = {stage.members[idx], 0, from};
        }
      }
      if (pairs) {
        for (std::size_t idx = 0; idx < stage.members.size(); ++idx) {
          const Provider& p = P[stage.members[idx]];
          if (jj - x > p.tmax) continue;
          const Ender& e = e1.member != idx ? e1 : e2;
          const Cost pair = add(e.value, lease_cost(jj - x, p.cost_per_slot));
          if (pair < best) {
            best = pair;
            choice = kPair;
            d = {stage.members[e.member], stage.members[idx], e.from};
          }
        }
      }
      cur[j] = best;
      grid.set(row, j, choice);
    }
    std::swap(prev, cur);
  }

  plan.total_cost = prev[n].value;
  std::size_t row = stages.size();
  std::int64_t j = instance.n;
  std::vector<Lease> leases;
  while (j > 0 || row > 0) {
    if (row == 0) {
      plan.default_slots.push_back(j);
      --j;
      continue;
    }
    const Choice c = grid.get(row, static_cast<std::size_t>(j));
    const Stage& stage = stages[row - 1];
    if (c == kSkip) {
      --row;
    } else if (c == kDefault) {
      plan.default_slots.push_back(j);
      --j;
    } else {
      const LeaseDetail& d = details[row][static_cast<std::size_t>(j - stage.lo)];
      if (c == kLease) {
        leases.push_back({d.first, d.from, j});
      } else {
        const std::int64_t x = P[d.first].t2;
        leases.push_back({d.second, x, j});
        leases.push_back({d.first, d.from, x});
      }
      j = d.from;
      --row;
    }
  }
  std::erase_if(leases, [](const Lease& l) { return l.from == l.to; });
  std::reverse(leases.begin(), leases.end());
  std::reverse(plan.default_slots.begin(), plan.default_slots.end());
  plan.leases = std::move(leases);
  return plan;
}

}  // namespace detail

inline CostPlan solve_min_cost(const Instance& instance) { return detail::solve<false>(instance); }

inline CostPlan solve_min_cost_quadratic(const Instance& instance) { return detail::solve<true>(instance); }

// Recomputes a plan's cost from its leases and default slots.
inline std::int64_t plan_cost(const Instance& instance, const CostPlan& plan) {
  std::int64_t total = 0;
  for (const Lease& l : plan.leases) total += (l.to - l.from) * instance.providers[l.provider].cost_per_slot;
  for (std::int64_t f : plan.default_slots) total += instance.default_costs[static_cast<std::size_t>(f - 1)];
  return total;
}

// Empty when the plan is feasible: leases respect their provider's window and
// length, no provider is used twice, and every file is covered exactly once.
inline std::vector<std::string> check_plan(const Instance& instance, const CostPlan& plan) {
  std::vector<std::string> problems;
  const auto n = static_cast<std::size_t>(instance.n);
  std::vector<int> cover(n + 1, 0);
  std::vector<bool> used(instance.providers.size(), false);
  for (const Lease& l : plan.leases) {
    if (l.provider >= instance.providers.size()) {
      problems.push_back("unknown provider");
      continue;
    }
    const Provider& p = instance.providers[l.provider];
    if (used[l.provider]) problems.push_back("provider " + p.id + " leased twice");
    used[l.provider] = true;
    if (l.from < 0 || l.to > instance.n || l.from > l.to) {
      problems.push_back("lease of " + p.id + " outside [0, n]");
      continue;
    }
    if (l.from > p.t1 || l.to < p.t2) problems.push_back("lease of " + p.id + " misses its window");
    if (l.to - l.from > p.tmax) problems.push_back("lease of " + p.id + " longer than tmax");
    for (std::int64_t f = l.from + 1; f <= l.to; ++f) ++cover[static_cast<std::size_t>(f)];
  }
  for (std::int64_t f : plan.default_slots) {
    if (f < 1 || f > instance.n) {
      problems.push_back("default slot out of range");
      continue;
    }
    ++cover[static_cast<std::size_t>(f)];
  }
  for (std::size_t f = 1; f <= n; ++f) {
    if (cover[f] != 1) problems.push_back("file " + std::to_string(f) + " covered " + std::to_string(cover[f]) + " times");
  }
  if (plan_cost(instance, plan) != plan.total_cost) problems.push_back("total_cost does not match leases + defaults");
  return problems;
}

// Exhaustive search over all plans, scanning time left to right: at each
// instant either the next file takes the default link or an unused provider
// starts a lease here. Refuses instances with k > 5 or n > 14.
inline std::int64_t brute_force_min_cost(const Instance& instance) {
  validate_instance(instance);
  if (instance.providers.size() > 5 || instance.n > 14) {
    throw BudgetExceeded("brute force limited to k <= 5 and n <= 14");
  }
  std::int64_t best = kInfinity;
  const auto& P = instance.providers;
  auto search = [&](auto&& self, std::int64_t t, unsigned used, std::int64_t cost) -> void {
    if (cost >= best) return;
    if (t == instance.n) {
      best = cost;
      return;
    }
    self(self, t + 1, used, cost + instance.default_costs[static_cast<std::size_t>(t)]);
    for (std::size_t i = 0; i < P.size(); ++i) {
      if ((used >> i) & 1u) continue;
      if (t > P[i].t1) continue;
      for (std::int64_t end = std::max(P[i].t2, t + 1); end <= std::min(instance.n, t + P[i].tmax); ++end) {
        self(self, end, used | (1u << i), cost + (end - t) * P[i].cost_per_slot);
      }
    }
  };
  search(search, 0, 0u, 0);
  return best;
}

}  // namespace dtsched::mincost
