#pragma once

// Online admission of bandwidth reservations over a slotted horizon. Per-slot
// usage lives in a BlockArray with range-add updates and range-max queries;
// a request is placed at the earliest start whose window stays within
// capacity, or rejected without touching any state.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dtsched/algebra.hpp"
#include "dtsched/block_partition.hpp"
#include "dtsched/error.hpp"

namespace dtsched::reservation {

struct Request {
  std::string id;
  std::int64_t amount = 1;
  std::int64_t earliest_start = 0;
  std::int64_t latest_finish = 0;
  std::int64_t duration = 1;

  friend bool operator==(const Request&, const Request&) = default;
};

// Slots [start, start + duration) hold `amount` units.
struct Reservation {
  std::string id;
  std::int64_t amount = 0;
  std::int64_t start = 0;
  std::int64_t duration = 0;

  friend bool operator==(const Reservation&, const Reservation&) = default;
};

struct Decision {
  bool accepted = false;
  std::optional<std::int64_t> start;

  friend bool operator==(const Decision&, const Decision&) = default;
};

class SlotProfile {
 public:
  using Usage = bp::BlockArray<bp::MaxAdd<std::int64_t>>;

  SlotProfile(std::int64_t n_slots, std::int64_t capacity)
      : n_slots_(n_slots), capacity_(capacity), usage_(make_usage(n_slots)) {
    if (capacity < 0) throw InvalidInstance("capacity must be non-negative");
  }

  std::int64_t n_slots() const { return n_slots_; }
  std::int64_t capacity() const { return capacity_; }
  const Usage& usage() const { return usage_; }
  const std::map<std::string, Reservation>& active() const { return active_; }

  // Throws InvalidInstance for a malformed request or an id already in use.
  Decision admit(const Request& r) {
    if (r.amount < 1 || r.duration < 1 || r.earliest_start < 0 ||
        r.earliest_start + r.duration > r.latest_finish || r.latest_finish > n_slots_) {
      throw InvalidInstance("malformed request '" + r.id + "'");
    }
    if (active_.contains(r.id) || released_.contains(r.id)) {
      throw InvalidInstance("duplicate request id '" + r.id + "'");
    }
    if (r.amount > capacity_) return {};
    for (std::int64_t t = r.earliest_start; t + r.duration <= r.latest_finish; ++t) {
      const auto a = static_cast<std::size_t>(t);
      const auto b = static_cast<std::size_t>(t + r.duration - 1);
      if (usage_.evaluate(a, b) + r.amount <= capacity_) {
        usage_.range_update(r.amount, a, b);
        active_.emplace(r.id, Reservation{r.id, r.amount, t, r.duration});
        return {true, t};
      }
    }
    return {};
  }

  // Throws InvalidInstance when `id` is unknown or already released.
  void release(const std::string& id) {
    const auto it = active_.find(id);
    if (it == active_.end()) {
      throw InvalidInstance(released_.contains(id) ? "reservation '" + id + "' already released"
                                                   : "unknown reservation '" + id + "'");
    }
    const Reservation& r = it->second;
    usage_.range_update(-r.amount, static_cast<std::size_t>(r.start),
                        static_cast<std::size_t>(r.start + r.duration - 1));
    released_.insert(id);
    active_.erase(it);
  }

  // Maximum usage over slots [a, b].
  std::int64_t usage_query(std::int64_t a, std::int64_t b) const {
    if (a < 0 || b < a || b >= n_slots_) throw std::out_of_range("slot range outside horizon");
    return usage_.evaluate(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }

  // Per-slot usage after all pending updates.
  std::vector<std::int64_t> slot_usage() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(n_slots_));
    for (std::size_t s = 0; s < usage_.size(); ++s) out.push_back(usage_.evaluate(s, s));
    return out;
  }

  // Compares what the profile represents (usage per slot and live
  // reservations), not how the block array happens to store it. Retired ids
  // are bookkeeping and not compared either.
  friend bool operator==(const SlotProfile& x, const SlotProfile& y) {
    return x.n_slots_ == y.n_slots_ && x.capacity_ == y.capacity_ && x.active_ == y.active_ &&
           x.slot_usage() == y.slot_usage();
  }

 private:
  static Usage make_usage(std::int64_t n_slots) {
    if (n_slots < 1) throw InvalidInstance("horizon must have at least one slot");
    return Usage(std::vector<std::int64_t>(static_cast<std::size_t>(n_slots), 0));
  }

  std::int64_t n_slots_;
  std::int64_t capacity_;
  Usage usage_;
  std::map<std::string, Reservation> active_;
  std::set<std::string> released_;
};

}  // namespace dtsched::reservation
