#pragma once

// Seeded comparison of the knapsack solvers on random divisible instances.
// The report document is a deterministic function of the config; wall times
// are kept in a separate document.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dtsched/io.hpp"
#include "dtsched/knapsack.hpp"

namespace dtsched::bench {

using io::json;

struct Config {
  std::size_t instances = 100;
  std::size_t max_items = 12;
  std::size_t max_paths = 3;
  std::uint64_t seed = 1;
  bool oracle = false;
  std::vector<std::int64_t> bases{2, 3};  // sizes are powers of one base
  std::int64_t max_size = 16;
  std::int64_t max_profit = 100;
  std::int64_t max_capacity = 40;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"heuristic", "greedy1", "firstfit:profit", "firstfit:profit_per_size",
                                              "firstfit:size_desc"};
  return names;
}

// Item count, path count and base are drawn uniformly; sizes are base^e with
// e uniform among the exponents keeping the size <= max_size.
inline knapsack::Instance generate_instance(std::mt19937_64& rng, const Config& cfg) {
  auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  knapsack::Instance inst;
  const auto n = uniform(1, static_cast<std::int64_t>(cfg.max_items));
  const auto k = uniform(1, static_cast<std::int64_t>(cfg.max_paths));
  const std::int64_t base = cfg.bases[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(cfg.bases.size()) - 1))];
  std::vector<std::int64_t> sizes{1};
  while (sizes.back() * base <= cfg.max_size) sizes.push_back(sizes.back() * base);
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t size = sizes[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(sizes.size()) - 1))];
    inst.items.push_back({"i" + std::to_string(i), size, uniform(1, cfg.max_profit)});
  }
  for (std::int64_t j = 0; j < k; ++j) inst.paths.push_back({"p" + std::to_string(j), uniform(0, cfg.max_capacity)});
  return inst;
}

inline knapsack::Solution run_algorithm(const std::string& name, const knapsack::Instance& inst) {
  using knapsack::SortCriterion;
  if (name == "heuristic") return knapsack::solve_heuristic(inst);
  if (name == "greedy1") return knapsack::solve_greedy1(inst);
  if (name == "firstfit:profit") return knapsack::solve_sorted_first_fit(inst, SortCriterion::profit);
  if (name == "firstfit:profit_per_size") return knapsack::solve_sorted_first_fit(inst, SortCriterion::profit_per_size);
  if (name == "firstfit:size_desc") return knapsack::solve_sorted_first_fit(inst, SortCriterion::size_desc);
  throw InvalidInstance("unknown algorithm '" + name + "'");
}

struct Row {
  std::size_t instance = 0;
  std::size_t items = 0;
  std::size_t paths = 0;
  std::vector<std::int64_t> profits;  // per algorithm_names()
  std::vector<double> seconds;        // per algorithm_names(), not part of the payload
  std::optional<std::int64_t> optimal;
  double oracle_seconds = 0;
  std::size_t stage1_inserted = 0;
  std::size_t iterations = 0;
};

struct Report {
  Config config;
  std::vector<Row> rows;

  json payload() const;
  json timings() const;
};

inline Report run(const Config& cfg) {
  using clock = std::chrono::steady_clock;
  Report report{cfg, {}};
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.instances; ++t) {
    const knapsack::Instance inst = generate_instance(rng, cfg);
    Row row;
    row.instance = t;
    row.items = inst.items.size();
    row.paths = inst.paths.size();
    for (const std::string& name : algorithm_names()) {
      const auto start = clock::now();
      const knapsack::Solution sol = run_algorithm(name, inst);
      row.seconds.push_back(std::chrono::duration<double>(clock::now() - start).count());
      row.profits.push_back(sol.total_profit);
    }
    const knapsack::HeuristicRun hr = knapsack::run_heuristic(inst);
    row.stage1_inserted = hr.stage1_inserted;
    row.iterations = hr.iterations.size();
    if (cfg.oracle) {
      const auto start = clock::now();
      row.optimal = knapsack::solve_exact_dp(inst);
      row.oracle_seconds = std::chrono::duration<double>(clock::now() - start).count();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline json Report::payload() const {
  const auto& names = algorithm_names();
  json cfg{{"instances", config.instances}, {"max_items", config.max_items}, {"max_paths", config.max_paths},
           {"seed", config.seed},           {"oracle", config.oracle},       {"bases", config.bases},
           {"max_size", config.max_size},   {"max_profit", config.max_profit}, {"max_capacity", config.max_capacity}};
  json rows_json = json::array();
  for (const Row& r : rows) {
    json profits = json::object();
    for (std::size_t a = 0; a < names.size(); ++a) profits[names[a]] = r.profits[a];
    rows_json.push_back({{"instance", r.instance},
                         {"items", r.items},
                         {"paths", r.paths},
                         {"profits", profits},
                         {"optimal", r.optimal ? json(*r.optimal) : json(nullptr)},
                         {"stage1_inserted", r.stage1_inserted},
                         {"iterations", r.iterations}});
  }
  json summary = json::object();
  for (std::size_t a = 0; a < names.size(); ++a) {
    double profit_sum = 0;
    double ratio_sum = 0;
    std::size_t optimal_hits = 0;
    std::size_t with_oracle = 0;
    for (const Row& r : rows) {
      profit_sum += static_cast<double>(r.profits[a]);
      if (!r.optimal) continue;
      ++with_oracle;
      if (r.profits[a] == *r.optimal) ++optimal_hits;
      ratio_sum += *r.optimal == 0 ? 1.0 : static_cast<double>(r.profits[a]) / static_cast<double>(*r.optimal);
    }
    json s{{"mean_profit", rows.empty() ? json(nullptr) : json(profit_sum / static_cast<double>(rows.size()))}};
    s["optimality_rate"] = with_oracle ? json(static_cast<double>(optimal_hits) / static_cast<double>(with_oracle)) : json(nullptr);
    s["mean_profit_ratio"] = with_oracle ? json(ratio_sum / static_cast<double>(with_oracle)) : json(nullptr);
    summary[names[a]] = s;
  }
  return {{"config", cfg}, {"algorithms", names}, {"rows", rows_json}, {"summary", summary}};
}

inline json Report::timings() const {
  const auto& names = algorithm_names();
  json mean = json::object();
  for (std::size_t a = 0; a < names.size(); ++a) {
    double sum = 0;
    for (const Row& r : rows) sum += r.seconds[a];
    mean[names[a]] = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
  }
  if (config.oracle) {
    double sum = 0;
    for (const Row& r : rows) sum += r.oracle_seconds;
    mean["exact"] = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
  }
  return {{"mean_seconds", mean}};
}

}  // namespace dtsched::bench
