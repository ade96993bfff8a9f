#pragma once

// Document-in, document-out commands behind the dtsched command line tool.

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "dtsched/bench.hpp"
#include "dtsched/io.hpp"
#include "dtsched/knapsack.hpp"
#include "dtsched/mincost.hpp"
#include "dtsched/reservation.hpp"
#include "dtsched/trace.hpp"

namespace dtsched::cli {

using io::json;

// Selectors: heuristic | greedy1 | firstfit:<profit|profit_per_size|size_desc>
// | exact. The exact oracle reports only {"total_profit": ...}.
inline json knapsack_command(const json& doc, const std::string& algo,
                             std::uint64_t state_budget = knapsack::kDefaultStateBudget) {
  const knapsack::Instance inst = io::knapsack_instance_from_json(doc);
  if (algo == "exact") return {{"total_profit", knapsack::solve_exact_dp(inst, state_budget)}};
  if (algo == "heuristic" || algo == "greedy1" || algo == "firstfit:profit" ||
      algo == "firstfit:profit_per_size" || algo == "firstfit:size_desc") {
    return io::to_json(inst, bench::run_algorithm(algo, inst));
  }
  throw InvalidInstance("unknown algorithm '" + algo + "'");
}

inline json mincost_command(const json& doc, std::vector<std::string>* warnings = nullptr) {
  const mincost::Instance inst = io::mincost_instance_from_json(doc);
  const mincost::CostPlan plan = mincost::solve_min_cost(inst);
  if (warnings) {
    for (std::size_t i : plan.skipped_providers) {
      warnings->push_back("provider '" + inst.providers[i].id + "' skipped: t2 beyond the last file");
    }
  }
  return io::to_json(inst, plan);
}

inline json bp_command(const json& doc) { return bp::run_trace(doc); }

// One JSON object per input line in, one decision per line out. Blank lines
// are skipped.
inline std::string reserve_command(std::int64_t slots, std::int64_t capacity, std::istream& in) {
  reservation::SlotProfile profile(slots, capacity);
  std::ostringstream out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string path = "/line/" + std::to_string(line_no);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw io::SchemaError(path, std::string("invalid JSON: ") + e.what());
    }
    const io::LogEntry entry = io::log_entry_from_json(doc, path);
    if (entry.is_release) {
      json result{{"release", entry.release_id}, {"ok", true}};
      try {
        profile.release(entry.release_id);
      } catch (const InvalidInstance& e) {
        result["ok"] = false;
        result["error"] = e.what();
      }
      out << result.dump() << '\n';
    } else {
      out << io::to_json(entry.request, profile.admit(entry.request)).dump() << '\n';
    }
  }
  return out.str();
}

inline json error_document(const std::exception& e) {
  json err{{"message", e.what()}};
  if (const auto* s = dynamic_cast<const io::SchemaError*>(&e)) {
    err["type"] = "schema";
    err["path"] = s->path();
  } else if (dynamic_cast<const BudgetExceeded*>(&e)) {
    err["type"] = "budget_exceeded";
  } else if (dynamic_cast<const UnsupportedCombination*>(&e)) {
    err["type"] = "unsupported";
  } else if (dynamic_cast<const InvalidInstance*>(&e)) {
    err["type"] = "invalid_instance";
  } else if (dynamic_cast<const json::exception*>(&e)) {
    err["type"] = "parse";
  } else {
    err["type"] = "error";
  }
  return {{"error", err}};
}

}  // namespace dtsched::cli
