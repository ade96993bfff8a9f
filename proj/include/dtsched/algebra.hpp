#pragma once

// Algebra catalog for BlockArray. Numeric algebras are templated on the
// carrier (default std::int64_t); overflow is the caller's responsibility,
// and the multiplicative ones (product_mul in particular, whose scale is
// u^(b-a+1)) overflow first.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "dtsched/error.hpp"

namespace dtsched::bp {

inline std::size_t span_length(std::size_t a, std::size_t b) { return b - a + 1; }

// ---- numeric ---------------------------------------------------------------

template <class T = std::int64_t>
struct SumAdd {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "sum_add";
  static T combine(const T& x, const T& y) { return x + y; }
  static T apply(const T& u, const T& v) { return u + v; }
  static T compose(const T& u, const T& w) { return u + w; }
  static T scale(const T& u, std::size_t a, std::size_t b) { return u * static_cast<T>(span_length(a, b)); }
};

template <class T = std::int64_t>
struct MinAdd {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "min_add";
  static T combine(const T& x, const T& y) { return std::min(x, y); }
  static T apply(const T& u, const T& v) { return u + v; }
  static T compose(const T& u, const T& w) { return u + w; }
  static T scale(const T& u, std::size_t, std::size_t) { return u; }
};

template <class T = std::int64_t>
struct MaxAdd {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "max_add";
  static T combine(const T& x, const T& y) { return std::max(x, y); }
  static T apply(const T& u, const T& v) { return u + v; }
  static T compose(const T& u, const T& w) { return u + w; }
  static T scale(const T& u, std::size_t, std::size_t) { return u; }
};

template <class T>
T power(T base, std::size_t exp) {
  T result = static_cast<T>(1);
  while (exp > 0) {
    if (exp & 1u) result = result * base;
    base = base * base;
    exp >>= 1u;
  }
  return result;
}

template <class T = std::int64_t>
struct ProductMul {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "product_mul";
  static T combine(const T& x, const T& y) { return x * y; }
  static T apply(const T& u, const T& v) { return u * v; }
  static T compose(const T& u, const T& w) { return u * w; }
  static T scale(const T& u, std::size_t a, std::size_t b) { return power(u, span_length(a, b)); }
};

// Scaling by a negative factor would turn the minimum into a maximum, so
// updates are restricted to u >= 0.
template <class T = std::int64_t>
struct MinMul {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "min_mul";
  static T combine(const T& x, const T& y) { return std::min(x, y); }
  static T apply(const T& u, const T& v) { return u * v; }
  static T compose(const T& u, const T& w) { return u * w; }
  static T scale(const T& u, std::size_t, std::size_t) { return u; }
  static bool admissible(const T& u) { return !(u < static_cast<T>(0)); }
};

template <class T = std::int64_t>
struct SumMul {
  using value_type = T;
  using update_type = T;
  static constexpr std::string_view name = "sum_mul";
  static T combine(const T& x, const T& y) { return x + y; }
  static T apply(const T& u, const T& v) { return u * v; }
  static T compose(const T& u, const T& w) { return u * w; }
  static T scale(const T& u, std::size_t, std::size_t) { return u; }
};

// ---- bit functions over (cnt0, cnt1) --------------------------------------

struct BitTuple {
  std::int64_t cnt0 = 0;
  std::int64_t cnt1 = 0;
  friend bool operator==(const BitTuple&, const BitTuple&) = default;
};

inline BitTuple bit_cell(int bit) { return {1 - bit, bit}; }

enum class BitOp { and_, or_, xor_ };

inline std::string_view to_string(BitOp op) {
  switch (op) {
    case BitOp::and_: return "and";
    case BitOp::or_: return "or";
    case BitOp::xor_: return "xor";
  }
  return "?";
}

// Result of an and/or/xor query over the bits counted by t.
inline int decode(const BitTuple& t, BitOp query) {
  switch (query) {
    case BitOp::or_: return t.cnt1 > 0 ? 1 : 0;
    case BitOp::xor_: return (t.cnt1 % 2 == 1) ? 1 : 0;
    case BitOp::and_: return t.cnt0 == 0 ? 1 : 0;
  }
  return 0;
}

// Any bit query (decoded from the counts) under range and/or/xor updates.
template <BitOp Update>
struct BitCount {
  using value_type = BitTuple;
  using update_type = int;
  static constexpr BitOp update_op = Update;
  static constexpr std::string_view name = Update == BitOp::and_  ? "bit_and"
                                           : Update == BitOp::or_ ? "bit_or"
                                                                  : "bit_xor";

  static BitTuple combine(const BitTuple& x, const BitTuple& y) { return {x.cnt0 + y.cnt0, x.cnt1 + y.cnt1}; }
  static BitTuple apply(int u, const BitTuple& v) {
    const std::int64_t all = v.cnt0 + v.cnt1;
    if (Update == BitOp::and_ && u == 0) return {all, 0};
    if (Update == BitOp::or_ && u == 1) return {0, all};
    if (Update == BitOp::xor_ && u == 1) return {v.cnt1, v.cnt0};
    return v;
  }
  static int compose(int u, int w) {
    if constexpr (Update == BitOp::and_) return u & w;
    else if constexpr (Update == BitOp::or_) return u | w;
    else return u ^ w;
  }
  static int scale(int u, std::size_t, std::size_t) { return u; }
  static bool admissible(int u) { return u == 0 || u == 1; }
};

// Plain bits with range xor update and range xor query.
struct XorParity {
  using value_type = int;
  using update_type = int;
  static constexpr std::string_view name = "xor_parity";
  static int combine(int x, int y) { return x ^ y; }
  static int apply(int u, int v) { return u ^ v; }
  static int compose(int u, int w) { return u ^ w; }
  static int scale(int u, std::size_t a, std::size_t b) { return span_length(a, b) % 2 == 0 ? 0 : u; }
  static bool admissible(int u) { return u == 0 || u == 1; }
};

// ---- range set via timestamps ---------------------------------------------

struct Stamped {
  std::int64_t w = 0;
  std::uint64_t t = 0;
  friend bool operator==(const Stamped&, const Stamped&) = default;
};

// Range assignment. Point query yields the last write covering the cell; a
// range query yields the most recent write in the range (leftmost cell on
// equal stamps, which only happens between initial values).
struct SetLastWriter {
  using value_type = Stamped;
  using update_type = Stamped;
  static constexpr std::string_view name = "set_last_writer";
  static Stamped combine(const Stamped& x, const Stamped& y) { return y.t > x.t ? y : x; }
  static Stamped apply(const Stamped& u, const Stamped& v) { return u.t > v.t ? u : v; }
  static Stamped compose(const Stamped& u, const Stamped& w) { return apply(u, w); }
  static Stamped scale(const Stamped& u, std::size_t, std::size_t) { return u; }
};

// ---- maximum-sum segment --------------------------------------------------

// Summary of a run of conceptual values: total, best prefix, best suffix and
// best segment, where the empty prefix/suffix/segment (sum 0) is allowed.
struct SegTuple {
  std::int64_t totalsum = 0;
  std::int64_t maxlsum = 0;
  std::int64_t maxrsum = 0;
  std::int64_t maxsum = 0;
  friend bool operator==(const SegTuple&, const SegTuple&) = default;
};

inline SegTuple seg_cell(std::int64_t cv) { return cv < 0 ? SegTuple{cv, 0, 0, 0} : SegTuple{cv, cv, cv, cv}; }

inline SegTuple seg_combine(const SegTuple& x, const SegTuple& y) {
  return {x.totalsum + y.totalsum, std::max(x.maxlsum, x.totalsum + y.maxlsum),
          std::max(y.maxrsum, y.totalsum + x.maxrsum), std::max({x.maxsum, y.maxsum, x.maxrsum + y.maxlsum})};
}

inline bool seg_well_formed(const SegTuple& s) {
  return s.maxlsum >= 0 && s.maxrsum >= 0 && s.maxsum >= std::max(s.maxlsum, s.maxrsum) &&
         s.totalsum <= s.maxlsum && s.totalsum <= s.maxrsum;
}

// Point assignment of a conceptual value, range maximum-sum-segment query.
struct MaxSeg {
  using value_type = SegTuple;
  using update_type = std::int64_t;  // new conceptual value
  static constexpr std::string_view name = "maxseg";
  static SegTuple combine(const SegTuple& x, const SegTuple& y) { return seg_combine(x, y); }
  static SegTuple apply(std::int64_t cv, const SegTuple&) { return seg_cell(cv); }
};

struct SetSegTuple {
  SegTuple seg;
  std::uint64_t t = 0;
  friend bool operator==(const SetSegTuple&, const SetSegTuple&) = default;
};

inline SetSegTuple set_seg_cell(std::int64_t cv, std::uint64_t stamp) { return {seg_cell(cv), stamp}; }

// Range assignment with range maximum-sum-segment (and range sum) query.
struct SetMaxSeg {
  using value_type = SetSegTuple;
  using update_type = SetSegTuple;
  static constexpr std::string_view name = "set_maxseg";
  static SetSegTuple combine(const SetSegTuple& x, const SetSegTuple& y) {
    return {seg_combine(x.seg, y.seg), std::max(x.t, y.t)};
  }
  static SetSegTuple apply(const SetSegTuple& u, const SetSegTuple& v) { return u.t > v.t ? u : v; }
  static SetSegTuple compose(const SetSegTuple& u, const SetSegTuple& w) { return apply(u, w); }
  static SetSegTuple scale(const SetSegTuple& u, std::size_t a, std::size_t b) {
    const auto len = static_cast<std::int64_t>(span_length(a, b));
    return {{len * u.seg.totalsum, len * u.seg.maxlsum, len * u.seg.maxrsum, len * u.seg.maxsum}, u.t};
  }
};

// ---- names -----------------------------------------------------------------

inline constexpr std::array<std::string_view, 19> kAlgebraNames = {
    "sum_add",     "min_add",     "max_add",     "product_mul", "min_mul",    "sum_mul",
    "bit_and_and", "bit_and_or",  "bit_and_xor", "bit_or_and",  "bit_or_or",  "bit_or_xor",
    "bit_xor_and", "bit_xor_or",  "bit_xor_xor", "xor_parity",  "set_last_writer",
    "maxseg",      "set_maxseg"};

// Throws UnsupportedCombination for range addition combined with a
// maximum-sum-segment query, InvalidInstance for any other unknown name.
inline void check_algebra_name(std::string_view name) {
  if (name == "add_maxseg" || name == "maxseg_add" || name == "range_add_maxseg") {
    throw UnsupportedCombination(
        "range addition update with range maximum-sum-segment query has no algebra");
  }
  if (std::find(kAlgebraNames.begin(), kAlgebraNames.end(), name) == kAlgebraNames.end()) {
    throw InvalidInstance("unknown algebra '" + std::string(name) + "'");
  }
}

}  // namespace dtsched::bp
