#include "dtsched/algebra.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dtsched/block_partition.hpp"
#include "oracles.hpp"

namespace {

using namespace dtsched::bp;

std::vector<std::int64_t> random_ints(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// scale(u, a, b) applied to the fold must equal the fold of u applied to
// every cell, and compose must equal applying both updates in turn.
template <class A>
void check_laws(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  for (int t = 0; t < 300; ++t) {
    const std::size_t len = 1 + rng() % 6;
    const auto cells = random_ints(rng, len, lo, hi);
    const auto us = random_ints(rng, 2, lo, hi);
    if (!admissible<A>(us[0]) || !admissible<A>(us[1])) continue;
    oracle::NaiveArray<A> naive(cells);
    const auto before = naive.query(0, len - 1);
    naive.update(us[0], 0, len - 1);
    EXPECT_EQ(A::apply(A::scale(us[0], 0, len - 1), before), naive.query(0, len - 1));

    const auto v = cells[0];
    EXPECT_EQ(A::apply(A::compose(us[1], us[0]), v), A::apply(us[1], A::apply(us[0], v)));
    EXPECT_EQ(A::compose(us[1], us[0]), A::compose(us[0], us[1]));
    if (len >= 3) {
      EXPECT_EQ(A::combine(A::combine(cells[0], cells[1]), cells[2]),
                A::combine(cells[0], A::combine(cells[1], cells[2])));
    }
  }
}

TEST(AlgebraLaws, Numeric) {
  std::mt19937_64 rng(1);
  check_laws<SumAdd<>>(rng, -50, 50);
  check_laws<MinAdd<>>(rng, -50, 50);
  check_laws<MaxAdd<>>(rng, -50, 50);
  check_laws<ProductMul<>>(rng, -3, 3);
  check_laws<MinMul<>>(rng, -20, 20);
  check_laws<SumMul<>>(rng, -9, 9);
}

TEST(AlgebraLaws, BitCountApplyMatchesCellwise) {
  std::mt19937_64 rng(2);
  auto run = [&]<BitOp U>() {
    using A = BitCount<U>;
    for (int t = 0; t < 200; ++t) {
      const std::size_t len = 1 + rng() % 8;
      std::vector<int> bits(len);
      BitTuple fold;
      for (auto& b : bits) {
        b = static_cast<int>(rng() % 2);
        fold = A::combine(fold, bit_cell(b));
      }
      const int u = static_cast<int>(rng() % 2);
      const int w = static_cast<int>(rng() % 2);
      BitTuple expect;
      for (int b : bits) {
        const int after = U == BitOp::and_ ? (b & u) : U == BitOp::or_ ? (b | u) : (b ^ u);
        expect = A::combine(expect, bit_cell(after));
      }
      EXPECT_EQ(A::apply(A::scale(u, 0, len - 1), fold), expect);
      EXPECT_EQ(A::apply(A::compose(w, u), fold), A::apply(w, A::apply(u, fold)));
    }
  };
  run.template operator()<BitOp::and_>();
  run.template operator()<BitOp::or_>();
  run.template operator()<BitOp::xor_>();
}

TEST(Catalog, XorQueryOverBits) {
  const std::vector<int> bits{1, 0, 1, 1};
  BitTuple t;
  for (int b : bits) t = BitCount<BitOp::xor_>::combine(t, bit_cell(b));
  EXPECT_EQ(t, (BitTuple{1, 3}));
  EXPECT_EQ(decode(t, BitOp::xor_), 1);
  EXPECT_EQ(decode(t, BitOp::or_), 1);
  EXPECT_EQ(decode(t, BitOp::and_), 0);

  BlockArray<XorParity> arr({1, 0, 1, 1}, 2);
  EXPECT_EQ(arr.range_query(0, 3), 1);
  arr.range_update(1, 0, 2);
  EXPECT_EQ(arr.range_query(0, 3), 0);
}

TEST(Catalog, SetLastWriter) {
  BlockArray<SetLastWriter> arr({{0, 0}, {0, 0}, {0, 0}, {0, 0}}, 2);
  arr.range_update({7, arr.timestamp()}, 0, 2);
  arr.range_update({9, arr.timestamp()}, 1, 3);
  EXPECT_EQ(arr.point_query(1).w, 9);
  EXPECT_EQ(arr.point_query(0).w, 7);
  EXPECT_EQ(arr.range_query(0, 3).w, 9);
  EXPECT_EQ(arr.range_query(0, 0).w, 7);
}

TEST(Catalog, MaxSegPointUpdates) {
  const std::vector<std::int64_t> cv{2, -3, 4, -1, 4};
  std::vector<SegTuple> cells;
  for (auto v : cv) cells.push_back(seg_cell(v));
  BlockArray<MaxSeg> arr(cells, 2);
  EXPECT_EQ(arr.range_query(0, 4).maxsum, 7);
  EXPECT_EQ(arr.range_query(0, 4), oracle::brute_seg(cv, 0, 4));

  std::vector<SegTuple> neg;
  for (auto v : {-4, -1, -7}) neg.push_back(seg_cell(v));
  BlockArray<MaxSeg> all_negative(neg, 2);
  EXPECT_EQ(all_negative.range_query(0, 2).maxsum, 0);

  arr.point_update(-10, 2);
  EXPECT_EQ(arr.range_query(0, 4).maxsum, 4);
}

TEST(Catalog, SetMaxSeg) {
  std::vector<SetSegTuple> cells;
  for (auto v : {3, -2, 5, 1, -4}) cells.push_back(set_seg_cell(v, 0));
  BlockArray<SetMaxSeg> arr(cells, 2);
  arr.range_update(set_seg_cell(-1, arr.timestamp()), 0, 4);
  EXPECT_EQ(arr.range_query(0, 4).seg, (SegTuple{-5, 0, 0, 0}));
  arr.range_update(set_seg_cell(2, arr.timestamp()), 1, 2);
  EXPECT_EQ(arr.range_query(0, 4).seg, oracle::brute_seg({-1, 2, 2, -1, -1}, 0, 4));
}

TEST(Catalog, SegTupleInvariants) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 500; ++t) {
    const auto cv = random_ints(rng, 1 + rng() % 10, -9, 9);
    SegTuple s = seg_cell(cv[0]);
    for (std::size_t i = 1; i < cv.size(); ++i) s = seg_combine(s, seg_cell(cv[i]));
    EXPECT_TRUE(seg_well_formed(s));
    EXPECT_EQ(s, oracle::brute_seg(cv, 0, cv.size() - 1));
  }
}

TEST(Catalog, Names) {
  for (auto name : kAlgebraNames) EXPECT_NO_THROW(check_algebra_name(name));
  EXPECT_THROW(check_algebra_name("add_maxseg"), dtsched::UnsupportedCombination);
  EXPECT_THROW(check_algebra_name("range_add_maxseg"), dtsched::UnsupportedCombination);
  EXPECT_THROW(check_algebra_name("nope"), dtsched::InvalidInstance);
  static_assert(!RangeUpdateAlgebra<MaxSeg>);
  static_assert(RangeUpdateAlgebra<SetMaxSeg>);
}

}  // namespace
