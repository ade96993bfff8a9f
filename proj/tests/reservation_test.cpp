#include "dtsched/reservation.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace {

using namespace dtsched::reservation;

TEST(Admit, EmptyProfileStartsAtEarliest) {
  SlotProfile p(10, 5);
  const Decision d = p.admit({"a", 2, 3, 9, 4});
  EXPECT_TRUE(d.accepted);
  EXPECT_EQ(d.start, 3);
  EXPECT_EQ(p.usage_query(3, 6), 2);
  EXPECT_EQ(p.usage_query(0, 2), 0);
}

TEST(Admit, AmountAboveCapacityIsRejected) {
  SlotProfile p(10, 5);
  EXPECT_FALSE(p.admit({"a", 6, 0, 10, 1}).accepted);
  EXPECT_TRUE(p.active().empty());
}

TEST(Admit, SkipsBusySlots) {
  SlotProfile p(10, 10);
  ASSERT_EQ(p.admit({"busy", 8, 2, 5, 3}).start, 2);
  const Decision d = p.admit({"r", 3, 0, 6, 2});
  EXPECT_EQ(d, (Decision{true, 0}));
  const Decision later = p.admit({"s", 3, 1, 7, 2});
  EXPECT_EQ(later.start, 5);
}

TEST(Admit, RejectionLeavesStateUntouched) {
  SlotProfile p(6, 4);
  p.admit({"a", 3, 0, 6, 6});
  const SlotProfile before = p;
  const SlotProfile::Usage raw = p.usage();
  EXPECT_FALSE(p.admit({"b", 2, 0, 6, 1}).accepted);
  EXPECT_TRUE(p == before);
  EXPECT_TRUE(p.usage() == raw);
}

TEST(Admit, MalformedAndDuplicateRequests) {
  SlotProfile p(5, 4);
  EXPECT_THROW(p.admit({"x", 0, 0, 5, 1}), dtsched::InvalidInstance);
  EXPECT_THROW(p.admit({"x", 1, 3, 4, 2}), dtsched::InvalidInstance);
  EXPECT_THROW(p.admit({"x", 1, 0, 6, 1}), dtsched::InvalidInstance);
  p.admit({"x", 1, 0, 5, 1});
  EXPECT_THROW(p.admit({"x", 1, 0, 5, 1}), dtsched::InvalidInstance);
  p.release("x");
  EXPECT_THROW(p.admit({"x", 1, 0, 5, 1}), dtsched::InvalidInstance);
}

TEST(Release, InverseOfAdmit) {
  const SlotProfile fresh(8, 3);
  SlotProfile p = fresh;
  p.admit({"a", 2, 1, 8, 4});
  EXPECT_FALSE(p == fresh);
  p.release("a");
  EXPECT_TRUE(p == fresh);
  EXPECT_THROW(p.release("a"), dtsched::InvalidInstance);
  EXPECT_THROW(p.release("ghost"), dtsched::InvalidInstance);
}

TEST(Properties, MatchesNaiveSimulatorAndNeverExceedsCapacity) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::int64_t n = uni(1, 40);
    const std::int64_t cap = uni(1, 10);
    SlotProfile p(n, cap);
    oracle::NaiveSlots naive(n, cap);
    std::vector<std::string> live;
    for (int op = 0; op < 60; ++op) {
      if (!live.empty() && uni(0, 3) == 0) {
        const auto pick = static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(live.size()) - 1));
        const Reservation r = p.active().at(live[pick]);
        p.release(live[pick]);
        naive.release(r.start, r.duration, r.amount);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
      } else {
        const std::int64_t dur = uni(1, n);
        const std::int64_t es = uni(0, n - dur);
        const Request req{"r" + std::to_string(op), uni(1, cap + 1), es, uni(es + dur, n), dur};
        const Decision d = p.admit(req);
        ASSERT_EQ(d.start, naive.admit(req));
        if (d.accepted) live.push_back(req.id);
      }
      ASSERT_EQ(p.slot_usage(), naive.usage());
      ASSERT_LE(p.usage_query(0, n - 1), cap);
    }
  }
}

}  // namespace
