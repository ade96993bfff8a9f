#include "dtsched/block_partition.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dtsched/algebra.hpp"
#include "oracles.hpp"

namespace {

using namespace dtsched::bp;
using Sum = SumAdd<>;

TEST(Build, BlockAggregates) {
  BlockArray<Sum> arr({1, 2, 3, 4}, 2);
  ASSERT_EQ(arr.block_count(), 2u);
  EXPECT_EQ(arr.aggregate(0), 3);
  EXPECT_EQ(arr.aggregate(1), 7);
  EXPECT_FALSE(arr.pending(0).has_value());
}

TEST(Build, SingletonAndShortLastBlock) {
  BlockArray<Sum> one({42}, 1);
  EXPECT_EQ(one.block_count(), 1u);
  EXPECT_EQ(one.aggregate(0), 42);

  BlockArray<Sum> five({1, 1, 1, 1, 1}, 2);
  ASSERT_EQ(five.block_count(), 3u);
  EXPECT_EQ(five.right(0) - five.left(0) + 1, 2u);
  EXPECT_EQ(five.right(1) - five.left(1) + 1, 2u);
  EXPECT_EQ(five.right(2) - five.left(2) + 1, 1u);
}

TEST(Build, RejectsBadArguments) {
  EXPECT_THROW(BlockArray<Sum>({}, 1), std::invalid_argument);
  EXPECT_THROW(BlockArray<Sum>({1, 2}, 0), std::invalid_argument);
  EXPECT_THROW(BlockArray<Sum>({1, 2}, 3), std::invalid_argument);
}

TEST(Build, DefaultBlockSizeIsCeilSqrt) {
  EXPECT_EQ(default_block_size(1), 1u);
  EXPECT_EQ(default_block_size(7), 3u);
  EXPECT_EQ(default_block_size(64), 8u);
  EXPECT_EQ(default_block_size(65), 9u);
  EXPECT_EQ(BlockArray<Sum>(std::vector<std::int64_t>(512, 0)).block_size(), 23u);
}

TEST(PointOps, SumAddExamples) {
  BlockArray<Sum> arr({1, 2, 3, 4}, 2);
  EXPECT_EQ(arr.point_query(2), 3);
  arr.point_update(5, 0);
  EXPECT_EQ(arr.point_query(0), 6);
  arr.range_update(1, 0, 3);
  EXPECT_EQ(arr.point_query(3), 5);
  EXPECT_THROW(arr.point_query(4), std::out_of_range);
}

TEST(RangeOps, SumAddExamples) {
  BlockArray<Sum> arr({1, 2, 3, 4}, 2);
  EXPECT_EQ(arr.range_query(0, 3), 10);
  arr.range_update(5, 1, 2);
  EXPECT_EQ(arr.range_query(0, 3), 20);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(arr.range_query(i, i), arr.point_query(i));
  EXPECT_THROW(arr.range_query(2, 1), std::out_of_range);
  EXPECT_THROW(arr.range_update(1, 0, 4), std::out_of_range);
}

TEST(RangeOps, PointUpdateAfterPendingBlockUpdate) {
  BlockArray<Sum> arr({1, 2, 3, 4}, 2);
  arr.range_update(10, 0, 1);  // full block: pending
  arr.point_update(1, 0);
  EXPECT_EQ(arr.range_query(0, 1), 24);
}

TEST(BlockRoutines, FoldOfPoints) {
  BlockArray<MinAdd<>> arr({1, 2, 3}, 3);
  EXPECT_FALSE(arr.range_query_points(1, 0).has_value());
  EXPECT_EQ(*arr.range_query_points(2, 2), 3);
  EXPECT_EQ(*arr.range_query_points(0, 2), 1);
}

TEST(BlockRoutines, FullAndPartialBlockUpdates) {
  BlockArray<Sum> arr({1, 2, 5}, 2);
  arr.range_update_full_block(0, 3);
  EXPECT_EQ(arr.pending(0), std::optional<std::int64_t>(3));
  EXPECT_EQ(arr.aggregate(0), 9);
  arr.range_update_partial_block(0, 1, 1, 1);
  EXPECT_FALSE(arr.pending(0).has_value());
  EXPECT_EQ(arr.range_query_full_block(0), 10);
  EXPECT_EQ(arr.range_query_partial_block(0, 0, 0), 4);
}

TEST(BlockRoutines, UninitializedAbsorption) {
  EXPECT_EQ((ufunc<Sum>(std::optional<std::int64_t>{}, std::optional<std::int64_t>{4})), std::optional<std::int64_t>(4));
  EXPECT_EQ((ufunc<Sum>(std::optional<std::int64_t>{4}, std::optional<std::int64_t>{})), std::optional<std::int64_t>(4));
  EXPECT_EQ((qfunc<Sum>(std::nullopt, std::optional<std::int64_t>{9})), std::optional<std::int64_t>(9));
  EXPECT_EQ((qfunc<Sum>(std::optional<std::int64_t>{9}, std::nullopt)), std::optional<std::int64_t>(9));
  EXPECT_EQ(ufunc<Sum>(std::nullopt, std::int64_t{5}), 5);
}

TEST(DirtyMode, FullQueryRefreshesLazily) {
  BlockArray<Sum> arr({1, 2, 3, 4}, 2, Refresh::dirty);
  arr.point_update(10, 0);
  EXPECT_TRUE(arr.is_dirty(0));
  EXPECT_EQ(arr.aggregate(0), 3);  // stale until queried
  EXPECT_EQ(arr.point_query(0), 11);
  EXPECT_EQ(arr.range_query(0, 3), 20);
}

TEST(DirtyMode, MatchesEagerOnRandomTraces) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + rng() % 60;
    const std::size_t k = 1 + rng() % n;
    std::vector<std::int64_t> init(n);
    for (auto& v : init) v = static_cast<std::int64_t>(rng() % 21) - 10;
    BlockArray<MinAdd<>> eager(init, k);
    BlockArray<MinAdd<>> lazy(init, k, Refresh::dirty);
    for (int op = 0; op < 500; ++op) {
      std::size_t a = rng() % n;
      std::size_t b = rng() % n;
      if (a > b) std::swap(a, b);
      const std::int64_t u = static_cast<std::int64_t>(rng() % 11) - 5;
      switch (rng() % 4) {
        case 0: eager.range_update(u, a, b); lazy.range_update(u, a, b); break;
        case 1: eager.point_update(u, a); lazy.point_update(u, a); break;
        case 2: ASSERT_EQ(eager.range_query(a, b), lazy.range_query(a, b)); break;
        default: ASSERT_EQ(eager.point_query(a), lazy.point_query(a)); break;
      }
    }
  }
}

TEST(Evaluate, ReadOnlyAndConsistent) {
  BlockArray<MaxAdd<>> arr({0, 0, 0, 0, 0, 0}, 2);
  arr.range_update(3, 0, 3);
  arr.range_update(2, 3, 5);
  const auto before = arr;
  EXPECT_EQ(arr.evaluate(0, 5), 5);
  EXPECT_EQ(arr.evaluate(4, 5), 2);
  EXPECT_TRUE(arr == before);
  EXPECT_EQ(arr.range_query(0, 5), 5);
}

TEST(Timestamp, StrictlyIncreasingFromGenesis) {
  BlockArray<SetLastWriter> arr({{1, 0}, {2, 0}}, 1);
  const auto t1 = arr.timestamp();
  const auto t2 = arr.timestamp();
  EXPECT_GT(t1, 0u);
  EXPECT_LT(t1, t2);
  EXPECT_EQ(arr.cells()[0].t, 0u);
  EXPECT_EQ(arr.cells()[1].t, 0u);
}

TEST(Admissibility, MinMulRejectsNegativeFactor) {
  BlockArray<MinMul<>> arr({1, 2, 3}, 2);
  EXPECT_THROW(arr.range_update(-1, 0, 2), std::invalid_argument);
  EXPECT_NO_THROW(arr.range_update(2, 0, 2));
  EXPECT_EQ(arr.range_query(0, 2), 2);
}

TEST(Cost, PerOpBound) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 7u, 64u, 300u}) {
    for (std::size_t k : {std::size_t{1}, default_block_size(n), n}) {
      BlockArray<Sum> arr(std::vector<std::int64_t>(n, 1), k);
      const double bound = 2.0 * static_cast<double>(k) + static_cast<double>(n) / static_cast<double>(k) + 4.0;
      for (int op = 0; op < 2000; ++op) {
        std::size_t a = rng() % n;
        std::size_t b = rng() % n;
        if (a > b) std::swap(a, b);
        switch (rng() % 4) {
          case 0: arr.range_update(1, a, b); break;
          case 1: arr.point_update(1, a); break;
          case 2: arr.range_query(a, b); break;
          default: arr.point_query(a); break;
        }
        ASSERT_LE(static_cast<double>(arr.last_cost().total()), bound);
      }
    }
  }
}

}  // namespace
