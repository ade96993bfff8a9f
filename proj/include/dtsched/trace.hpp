#pragma once

// Replays an op-trace document against a BlockArray:
//   {"n":int,"k":int,"algebra":str,"dirty":bool,"initial":[int...],
//    "ops":[{"op":"range_update"|"point_update"|"range_query"|"point_query",
//            "u":int,"a":int,"b":int,"i":int}...]}
// and returns {"results":[...]} with one entry per query op.
//
// Cells and updates are conceptual integers. Timestamped algebras stamp each
// update from the array's own clock; bit algebras take 0/1 and report the
// decoded query bit; segment algebras report the four sums.

#include <cstdint>
#include <string>

#include "dtsched/algebra.hpp"
#include "dtsched/block_partition.hpp"
#include "dtsched/io.hpp"

namespace dtsched::bp {

namespace codec {

using io::json;

template <class A>
struct Numeric {
  using algebra = A;
  static typename A::value_type cell(std::int64_t v) { return v; }
  template <class Array>
  static typename A::update_type update(std::int64_t u, Array&) { return u; }
  static json result(const typename A::value_type& v) { return v; }
};

inline int checked_bit(std::int64_t v) {
  if (v != 0 && v != 1) throw InvalidInstance("bit cells must be 0 or 1");
  return static_cast<int>(v);
}

template <BitOp Update, BitOp Query>
struct Bits {
  using algebra = BitCount<Update>;
  static BitTuple cell(std::int64_t v) { return bit_cell(checked_bit(v)); }
  template <class Array>
  static int update(std::int64_t u, Array&) { return static_cast<int>(u); }
  static json result(const BitTuple& t) { return decode(t, Query); }
};

struct Parity {
  using algebra = XorParity;
  static int cell(std::int64_t v) { return checked_bit(v); }
  template <class Array>
  static int update(std::int64_t u, Array&) { return static_cast<int>(u); }
  static json result(int v) { return v; }
};

struct LastWriter {
  using algebra = SetLastWriter;
  static Stamped cell(std::int64_t v) { return {v, 0}; }
  template <class Array>
  static Stamped update(std::int64_t u, Array& arr) { return {u, arr.timestamp()}; }
  static json result(const Stamped& v) { return v.w; }
};

inline json seg_json(const SegTuple& s) {
  return {{"totalsum", s.totalsum}, {"maxlsum", s.maxlsum}, {"maxrsum", s.maxrsum}, {"maxsum", s.maxsum}};
}

struct Seg {
  using algebra = MaxSeg;
  static SegTuple cell(std::int64_t v) { return seg_cell(v); }
  template <class Array>
  static std::int64_t update(std::int64_t u, Array&) { return u; }
  static json result(const SegTuple& v) { return seg_json(v); }
};

struct SetSeg {
  using algebra = SetMaxSeg;
  static SetSegTuple cell(std::int64_t v) { return set_seg_cell(v, 0); }
  template <class Array>
  static SetSegTuple update(std::int64_t u, Array& arr) { return set_seg_cell(u, arr.timestamp()); }
  static json result(const SetSegTuple& v) { return seg_json(v.seg); }
};

}  // namespace codec

template <class Codec>
io::json replay_trace(const io::json& doc) {
  using namespace io::detail;
  using A = typename Codec::algebra;
  const std::int64_t n = int_field(doc, "n", "");
  if (n < 1) throw io::SchemaError("/n", "must be >= 1");
  const io::json& init = as_array(field(doc, "initial", ""), "/initial");
  if (static_cast<std::int64_t>(init.size()) != n) throw io::SchemaError("/initial", "length must equal n");
  std::vector<typename A::value_type> cells;
  for (std::size_t i = 0; i < init.size(); ++i) cells.push_back(Codec::cell(as_int(init[i], child("/initial", i))));

  std::size_t k = default_block_size(static_cast<std::size_t>(n));
  if (doc.contains("k") && !doc["k"].is_null()) {
    const std::int64_t kk = as_int(doc["k"], "/k");
    if (kk < 1 || kk > n) throw io::SchemaError("/k", "must be in [1, n]");
    k = static_cast<std::size_t>(kk);
  }
  const bool dirty = doc.contains("dirty") ? as_bool(doc["dirty"], "/dirty") : false;
  BlockArray<A> arr(std::move(cells), k, dirty ? Refresh::dirty : Refresh::eager);

  auto index = [&](const io::json& op, std::string_view key, const std::string& path) {
    const std::int64_t v = int_field(op, key, path);
    if (v < 0 || v >= n) throw io::SchemaError(child(path, key), "index outside [0, n)");
    return static_cast<std::size_t>(v);
  };

  io::json results = io::json::array();
  const io::json& ops = as_array(field(doc, "ops", ""), "/ops");
  for (std::size_t t = 0; t < ops.size(); ++t) {
    const std::string p = child("/ops", t);
    const std::string kind = string_field(ops[t], "op", p);
    if (kind == "point_query") {
      results.push_back(Codec::result(arr.point_query(index(ops[t], "i", p))));
    } else if (kind == "range_query") {
      const std::size_t a = index(ops[t], "a", p);
      const std::size_t b = index(ops[t], "b", p);
      if (a > b) throw io::SchemaError(p, "a must not exceed b");
      results.push_back(Codec::result(arr.range_query(a, b)));
    } else if (kind == "point_update") {
      const std::size_t i = index(ops[t], "i", p);
      const std::int64_t u = int_field(ops[t], "u", p);
      auto upd = Codec::update(u, arr);
      if (!admissible<A>(upd)) throw io::SchemaError(child(p, "u"), "update not admissible for this algebra");
      arr.point_update(upd, i);
    } else if (kind == "range_update") {
      if constexpr (RangeUpdateAlgebra<A>) {
        const std::size_t a = index(ops[t], "a", p);
        const std::size_t b = index(ops[t], "b", p);
        if (a > b) throw io::SchemaError(p, "a must not exceed b");
        const std::int64_t u = int_field(ops[t], "u", p);
        auto upd = Codec::update(u, arr);
        if (!admissible<A>(upd)) throw io::SchemaError(child(p, "u"), "update not admissible for this algebra");
        arr.range_update(upd, a, b);
      } else {
        throw UnsupportedCombination(std::string(A::name) + " supports point updates only");
      }
    } else {
      throw io::SchemaError(child(p, "op"), "unknown op '" + kind + "'");
    }
  }
  return {{"results", results}};
}

inline io::json run_trace(const io::json& doc) {
  using namespace io::detail;
  const std::string name = string_field(doc, "algebra", "");
  check_algebra_name(name);
  using I = std::int64_t;
  if (name == "sum_add") return replay_trace<codec::Numeric<SumAdd<I>>>(doc);
  if (name == "min_add") return replay_trace<codec::Numeric<MinAdd<I>>>(doc);
  if (name == "max_add") return replay_trace<codec::Numeric<MaxAdd<I>>>(doc);
  if (name == "product_mul") return replay_trace<codec::Numeric<ProductMul<I>>>(doc);
  if (name == "min_mul") return replay_trace<codec::Numeric<MinMul<I>>>(doc);
  if (name == "sum_mul") return replay_trace<codec::Numeric<SumMul<I>>>(doc);
  if (name == "xor_parity") return replay_trace<codec::Parity>(doc);
  if (name == "set_last_writer") return replay_trace<codec::LastWriter>(doc);
  if (name == "maxseg") return replay_trace<codec::Seg>(doc);
  if (name == "set_maxseg") return replay_trace<codec::SetSeg>(doc);
  using enum BitOp;
  if (name == "bit_and_and") return replay_trace<codec::Bits<and_, and_>>(doc);
  if (name == "bit_and_or") return replay_trace<codec::Bits<and_, or_>>(doc);
  if (name == "bit_and_xor") return replay_trace<codec::Bits<and_, xor_>>(doc);
  if (name == "bit_or_and") return replay_trace<codec::Bits<or_, and_>>(doc);
  if (name == "bit_or_or") return replay_trace<codec::Bits<or_, or_>>(doc);
  if (name == "bit_or_xor") return replay_trace<codec::Bits<or_, xor_>>(doc);
  if (name == "bit_xor_and") return replay_trace<codec::Bits<xor_, and_>>(doc);
  if (name == "bit_xor_or") return replay_trace<codec::Bits<xor_, or_>>(doc);
  return replay_trace<codec::Bits<xor_, xor_>>(doc);
}

}  // namespace dtsched::bp
