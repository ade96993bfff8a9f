#pragma once

// JSON documents for instances, solutions, plans, op traces and request logs.
// Parse errors carry a JSON-pointer-style path to the offending field.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dtsched/error.hpp"
#include "dtsched/knapsack.hpp"
#include "dtsched/mincost.hpp"
#include "dtsched/reservation.hpp"
#include "json.hpp"

namespace dtsched::io {

using json = nlohmann::json;

class SchemaError : public InvalidInstance {
 public:
  SchemaError(std::string path, const std::string& message)
      : InvalidInstance(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

inline std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
inline std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

inline const json& field(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(path, key), "missing field");
  return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

inline const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

inline std::int64_t int_field(const json& j, std::string_view key, const std::string& path) {
  return as_int(field(j, key, path), child(path, key));
}

inline std::string string_field(const json& j, std::string_view key, const std::string& path) {
  return as_string(field(j, key, path), child(path, key));
}

inline void unique_id(std::set<std::string>& seen, const std::string& id, const std::string& path) {
  if (!seen.insert(id).second) throw SchemaError(path, "duplicate id '" + id + "'");
}

}  // namespace detail

// ---- knapsack --------------------------------------------------------------

inline knapsack::Instance knapsack_instance_from_json(const json& doc) {
  using namespace detail;
  knapsack::Instance inst;
  std::set<std::string> ids;
  const json& items = as_array(field(doc, "items", ""), "/items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string p = child("/items", i);
    knapsack::Item item{string_field(items[i], "id", p), int_field(items[i], "size", p),
                        int_field(items[i], "profit", p)};
    if (item.size < 1) throw SchemaError(child(p, "size"), "must be >= 1");
    if (item.profit < 1) throw SchemaError(child(p, "profit"), "must be >= 1");
    unique_id(ids, item.id, child(p, "id"));
    inst.items.push_back(std::move(item));
  }
  ids.clear();
  const json& paths = as_array(field(doc, "paths", ""), "/paths");
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const std::string p = child("/paths", j);
    knapsack::Path path{string_field(paths[j], "id", p), int_field(paths[j], "capacity", p)};
    if (path.capacity < 0) throw SchemaError(child(p, "capacity"), "must be >= 0");
    unique_id(ids, path.id, child(p, "id"));
    inst.paths.push_back(std::move(path));
  }
  knapsack::validate_instance(inst);
  return inst;
}

inline json to_json(const knapsack::Instance& inst) {
  json doc{{"items", json::array()}, {"paths", json::array()}};
  for (const auto& i : inst.items) doc["items"].push_back({{"id", i.id}, {"size", i.size}, {"profit", i.profit}});
  for (const auto& p : inst.paths) doc["paths"].push_back({{"id", p.id}, {"capacity", p.capacity}});
  return doc;
}

inline json to_json(const knapsack::Instance& inst, const knapsack::Solution& sol) {
  json doc{{"total_profit", sol.total_profit}, {"assignments", json::array()}, {"rejected", json::array()}};
  std::vector<bool> accepted(inst.items.size(), false);
  for (const auto& a : sol.assignments) {
    doc["assignments"].push_back(
        {{"item", inst.items[a.item].id}, {"path", inst.paths[a.path].id}, {"start", a.start}});
    accepted[a.item] = true;
  }
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    if (!accepted[i]) doc["rejected"].push_back(inst.items[i].id);
  }
  return doc;
}

inline knapsack::Solution knapsack_solution_from_json(const knapsack::Instance& inst, const json& doc) {
  using namespace detail;
  std::unordered_map<std::string, std::size_t> item_index;
  std::unordered_map<std::string, std::size_t> path_index;
  for (std::size_t i = 0; i < inst.items.size(); ++i) item_index[inst.items[i].id] = i;
  for (std::size_t j = 0; j < inst.paths.size(); ++j) path_index[inst.paths[j].id] = j;

  knapsack::Solution sol;
  sol.total_profit = int_field(doc, "total_profit", "");
  const json& as = as_array(field(doc, "assignments", ""), "/assignments");
  for (std::size_t k = 0; k < as.size(); ++k) {
    const std::string p = child("/assignments", k);
    const std::string item = string_field(as[k], "item", p);
    const std::string path = string_field(as[k], "path", p);
    if (!item_index.contains(item)) throw SchemaError(child(p, "item"), "unknown item '" + item + "'");
    if (!path_index.contains(path)) throw SchemaError(child(p, "path"), "unknown path '" + path + "'");
    sol.assignments.push_back({item_index[item], path_index[path], int_field(as[k], "start", p)});
  }
  as_array(field(doc, "rejected", ""), "/rejected");
  return sol;
}

// ---- min cost ----------------------------------------------------------------

inline mincost::Instance mincost_instance_from_json(const json& doc) {
  using namespace detail;
  mincost::Instance inst;
  inst.n = int_field(doc, "n", "");
  if (inst.n < 0) throw SchemaError("/n", "must be >= 0");
  const json& costs = as_array(field(doc, "default_costs", ""), "/default_costs");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    inst.default_costs.push_back(as_int(costs[i], child("/default_costs", i)));
  }
  if (static_cast<std::int64_t>(inst.default_costs.size()) != inst.n) {
    throw SchemaError("/default_costs", "length must equal n");
  }
  std::set<std::string> ids;
  const json& providers = as_array(field(doc, "providers", ""), "/providers");
  for (std::size_t i = 0; i < providers.size(); ++i) {
    const std::string p = child("/providers", i);
    const json& pj = providers[i];
    mincost::Provider prov{string_field(pj, "id", p), int_field(pj, "cost_per_slot", p), int_field(pj, "t1", p),
                           int_field(pj, "t2", p), int_field(pj, "tmax", p)};
    unique_id(ids, prov.id, child(p, "id"));
    inst.providers.push_back(std::move(prov));
  }
  mincost::validate_instance(inst);
  return inst;
}

inline json to_json(const mincost::Instance& inst) {
  json doc{{"n", inst.n}, {"default_costs", inst.default_costs}, {"providers", json::array()}};
  for (const auto& p : inst.providers) {
    doc["providers"].push_back(
        {{"id", p.id}, {"cost_per_slot", p.cost_per_slot}, {"t1", p.t1}, {"t2", p.t2}, {"tmax", p.tmax}});
  }
  return doc;
}

inline json to_json(const mincost::Instance& inst, const mincost::CostPlan& plan) {
  json doc{{"total_cost", plan.total_cost}, {"leases", json::array()}, {"default_slots", plan.default_slots}};
  for (const auto& l : plan.leases) {
    doc["leases"].push_back({{"provider", inst.providers[l.provider].id}, {"from", l.from}, {"to", l.to}});
  }
  return doc;
}

inline mincost::CostPlan mincost_plan_from_json(const mincost::Instance& inst, const json& doc) {
  using namespace detail;
  mincost::CostPlan plan;
  plan.total_cost = int_field(doc, "total_cost", "");
  const json& leases = as_array(field(doc, "leases", ""), "/leases");
  for (std::size_t i = 0; i < leases.size(); ++i) {
    const std::string p = child("/leases", i);
    const std::string id = string_field(leases[i], "provider", p);
    std::size_t idx = inst.providers.size();
    for (std::size_t k = 0; k < inst.providers.size(); ++k) {
      if (inst.providers[k].id == id) idx = k;
    }
    if (idx == inst.providers.size()) throw SchemaError(child(p, "provider"), "unknown provider '" + id + "'");
    plan.leases.push_back({idx, int_field(leases[i], "from", p), int_field(leases[i], "to", p)});
  }
  const json& slots = as_array(field(doc, "default_slots", ""), "/default_slots");
  for (std::size_t i = 0; i < slots.size(); ++i) plan.default_slots.push_back(as_int(slots[i], child("/default_slots", i)));
  return plan;
}

// ---- reservation request log ----------------------------------------------

struct LogEntry {
  bool is_release = false;
  reservation::Request request;  // when !is_release
  std::string release_id;        // when is_release
};

inline LogEntry log_entry_from_json(const json& doc, const std::string& path) {
  using namespace detail;
  LogEntry e;
  if (doc.is_object() && doc.contains("release")) {
    e.is_release = true;
    e.release_id = as_string(doc["release"], child(path, "release"));
    return e;
  }
  e.request = {string_field(doc, "id", path), int_field(doc, "amount", path), int_field(doc, "earliest_start", path),
               int_field(doc, "latest_finish", path), int_field(doc, "duration", path)};
  return e;
}

inline json to_json(const reservation::Request& r, const reservation::Decision& d) {
  return {{"id", r.id}, {"accepted", d.accepted}, {"start", d.start ? json(*d.start) : json(nullptr)}};
}

}  // namespace dtsched::io
