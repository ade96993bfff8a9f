#pragma once

// Block partitioning (sqrt decomposition) over a pluggable algebra.
//
// An algebra A supplies
//   value_type, update_type
//   combine(v, v) -> v        associative range-query fold
//   apply(u, v)   -> v        effect of one update on one value
// and, when range updates are supported,
//   compose(u_new, u_old) -> u   merge of two pending updates (commutative)
//   scale(u, a, b)        -> u   effect of u on the fold of cells a..b
// plus an optional admissible(u) -> bool precondition on updates.
//
// The "uninitialized" marker is std::nullopt; every helper that receives it
// returns its other argument.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtsched::bp {

template <class A>
concept Algebra = requires(const typename A::value_type& v, const typename A::update_type& u) {
  { A::combine(v, v) } -> std::convertible_to<typename A::value_type>;
  { A::apply(u, v) } -> std::convertible_to<typename A::value_type>;
};

template <class A>
concept RangeUpdateAlgebra =
    Algebra<A> && requires(const typename A::update_type& u, std::size_t a) {
      { A::compose(u, u) } -> std::convertible_to<typename A::update_type>;
      { A::scale(u, a, a) } -> std::convertible_to<typename A::update_type>;
    };

template <Algebra A>
bool admissible(const typename A::update_type& u) {
  if constexpr (requires { A::admissible(u); }) {
    return A::admissible(u);
  } else {
    return true;
  }
}

// qFunc with the uninitialized convention.
template <Algebra A>
std::optional<typename A::value_type> qfunc(const std::optional<typename A::value_type>& x,
                                            const std::optional<typename A::value_type>& y) {
  if (!x) return y;
  if (!y) return x;
  return A::combine(*x, *y);
}

// uFunc(update, value) with the uninitialized convention.
template <Algebra A>
typename A::value_type ufunc(const std::optional<typename A::update_type>& u, const typename A::value_type& v) {
  return u ? A::apply(*u, v) : v;
}

// uFunc(update, update) with the uninitialized convention.
template <RangeUpdateAlgebra A>
std::optional<typename A::update_type> ufunc(const std::optional<typename A::update_type>& newer,
                                             const std::optional<typename A::update_type>& older) {
  if (!newer) return older;
  if (!older) return newer;
  return A::compose(*newer, *older);
}

enum class Refresh {
  eager,  // qagg recomputed after every point/partial update
  dirty,  // qagg recomputed on the next full-block query
};

// Cells and blocks examined by the most recent operation.
struct OpCost {
  std::size_t cells = 0;
  std::size_t blocks = 0;
  std::size_t total() const { return cells + blocks; }
};

inline std::size_t default_block_size(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (k * k < n) ++k;
  while (k > 1 && (k - 1) * (k - 1) >= n) --k;
  return k == 0 ? 1 : k;
}

template <Algebra A>
class BlockArray {
 public:
  using algebra_type = A;
  using value_type = typename A::value_type;
  using update_type = typename A::update_type;

  BlockArray(std::vector<value_type> values, std::size_t block_size, Refresh refresh = Refresh::eager)
      : values_(std::move(values)), k_(block_size), refresh_(refresh) {
    if (values_.empty()) throw std::invalid_argument("block array needs at least one cell");
    if (k_ == 0 || k_ > values_.size()) throw std::invalid_argument("block size must be in [1, n]");
    const std::size_t blocks = (values_.size() + k_ - 1) / k_;
    uagg_.assign(blocks, std::nullopt);
    dirty_.assign(blocks, 0);
    qagg_.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) qagg_.push_back(*range_query_points(left(b), right(b)));
  }

  explicit BlockArray(std::vector<value_type> values, Refresh refresh = Refresh::eager)
      : BlockArray(values, default_block_size(values.size()), refresh) {}

  std::size_t size() const { return values_.size(); }
  std::size_t block_size() const { return k_; }
  std::size_t block_count() const { return qagg_.size(); }
  std::size_t block_of(std::size_t i) const { return i / k_; }
  std::size_t left(std::size_t b) const { return b * k_; }
  std::size_t right(std::size_t b) const { return std::min(values_.size(), (b + 1) * k_) - 1; }
  Refresh refresh() const { return refresh_; }

  std::span<const value_type> cells() const { return values_; }
  const std::optional<update_type>& pending(std::size_t b) const { return uagg_[b]; }
  const value_type& aggregate(std::size_t b) const { return qagg_[b]; }
  bool is_dirty(std::size_t b) const { return dirty_[b] != 0; }
  OpCost last_cost() const { return cost_; }

  // Strictly increasing per structure; initial cells carry stamp 0.
  std::uint64_t timestamp() { return ++clock_; }
  std::uint64_t last_timestamp() const { return clock_; }

  // ---- point operations --------------------------------------------------

  void point_update(const update_type& u, std::size_t i) {
    check_index(i);
    check_update(u);
    cost_ = {};
    const std::size_t b = block_of(i);
    ++cost_.blocks;
    if (refresh_ == Refresh::dirty) {
      values_[i] = A::apply(u, values_[i]);
      dirty_[b] = 1;
      ++cost_.cells;
      return;
    }
    // A pending full-block update must reach the cells before the block
    // fold is rebuilt from them.
    flush(b);
    values_[i] = A::apply(u, values_[i]);
    qagg_[b] = *range_query_points(left(b), right(b));
    cost_.cells += block_length(b);
  }

  value_type point_query(std::size_t i) const {
    check_index(i);
    cost_ = {1, 1};
    return ufunc<A>(uagg_[block_of(i)], values_[i]);
  }

  // ---- range operations --------------------------------------------------

  void range_update(const update_type& u, std::size_t a, std::size_t b)
    requires RangeUpdateAlgebra<A>
  {
    check_range(a, b);
    check_update(u);
    cost_ = {};
    const std::size_t ba = block_of(a);
    const std::size_t bb = block_of(b);
    if (ba == bb) {
      if (a == left(ba) && b == right(ba)) range_update_full_block(ba, u);
      else range_update_partial_block(ba, u, a, b);
      return;
    }
    range_update_partial_block(ba, u, a, right(ba));
    range_update_partial_block(bb, u, left(bb), b);
    for (std::size_t blk = ba + 1; blk < bb; ++blk) range_update_full_block(blk, u);
  }

  value_type range_query(std::size_t a, std::size_t b) {
    check_range(a, b);
    cost_ = {};
    const std::size_t ba = block_of(a);
    const std::size_t bb = block_of(b);
    if (ba == bb) return range_query_partial_block(ba, a, b);
    const value_type qa = range_query_partial_block(ba, a, right(ba));
    const value_type qb = range_query_partial_block(bb, left(bb), b);
    std::optional<value_type> inner;
    for (std::size_t blk = ba + 1; blk < bb; ++blk) inner = qfunc<A>(inner, range_query_full_block(blk));
    return *qfunc<A>(qa, qfunc<A>(inner, qb));
  }

  // Read-only range query: pending updates are applied on the fly instead of
  // being pushed into the cells, so the structure is left untouched.
  value_type evaluate(std::size_t a, std::size_t b) const {
    check_range(a, b);
    cost_ = {};
    std::optional<value_type> q;
    for (std::size_t blk = block_of(a); blk <= block_of(b); ++blk) {
      const std::size_t lo = std::max(a, left(blk));
      const std::size_t hi = std::min(b, right(blk));
      ++cost_.blocks;
      if (lo == left(blk) && hi == right(blk) && !dirty_[blk]) {
        q = qfunc<A>(q, qagg_[blk]);
        continue;
      }
      for (std::size_t p = lo; p <= hi; ++p) q = qfunc<A>(q, ufunc<A>(uagg_[blk], values_[p]));
      cost_.cells += hi - lo + 1;
    }
    return *q;
  }

  // ---- block-level building blocks ---------------------------------------
  // These operate on raw cells and keep the block bookkeeping consistent
  // only when used as the range operations above use them.

  void range_update_points(const update_type& u, std::size_t a, std::size_t b) {
    for (std::size_t p = a; p <= b; ++p) values_[p] = A::apply(u, values_[p]);
  }

  // Fold of the raw cells a..b; nullopt for an empty range (a > b).
  std::optional<value_type> range_query_points(std::size_t a, std::size_t b) const {
    std::optional<value_type> q;
    for (std::size_t p = a; p <= b && p < values_.size(); ++p) q = qfunc<A>(q, values_[p]);
    return q;
  }

  void range_update_partial_block(std::size_t blk, const update_type& u, std::size_t a, std::size_t b) {
    ++cost_.blocks;
    if (refresh_ == Refresh::dirty) {
      range_update_points(u, a, b);
      dirty_[blk] = 1;
      cost_.cells += b - a + 1;
      return;
    }
    flush(blk);
    range_update_points(u, a, b);
    qagg_[blk] = *range_query_points(left(blk), right(blk));
    cost_.cells += block_length(blk);
  }

  void range_update_full_block(std::size_t blk, const update_type& u)
    requires RangeUpdateAlgebra<A>
  {
    ++cost_.blocks;
    uagg_[blk] = ufunc<A>(std::optional<update_type>(u), uagg_[blk]);
    qagg_[blk] = A::apply(A::scale(u, left(blk), right(blk)), qagg_[blk]);
  }

  value_type range_query_partial_block(std::size_t blk, std::size_t a, std::size_t b) {
    ++cost_.blocks;
    if (uagg_[blk]) {
      flush(blk);
      cost_.cells += block_length(blk);
    } else {
      cost_.cells += b - a + 1;
    }
    return *range_query_points(a, b);
  }

  value_type range_query_full_block(std::size_t blk) {
    ++cost_.blocks;
    if (dirty_[blk]) {
      flush(blk);
      qagg_[blk] = *range_query_points(left(blk), right(blk));
      dirty_[blk] = 0;
      cost_.cells += block_length(blk);
    }
    return qagg_[blk];
  }

  friend bool operator==(const BlockArray& x, const BlockArray& y) {
    return x.values_ == y.values_ && x.k_ == y.k_ && x.refresh_ == y.refresh_ && x.uagg_ == y.uagg_ &&
           x.qagg_ == y.qagg_ && x.dirty_ == y.dirty_ && x.clock_ == y.clock_;
  }

 private:
  std::size_t block_length(std::size_t b) const { return right(b) - left(b) + 1; }

  // Pushes the pending block update into every cell of the block.
  void flush(std::size_t b) {
    if (!uagg_[b]) return;
    range_update_points(*uagg_[b], left(b), right(b));
    uagg_[b].reset();
  }

  void check_index(std::size_t i) const {
    if (i >= values_.size()) {
      throw std::out_of_range("cell " + std::to_string(i) + " outside [0, " + std::to_string(values_.size()) + ")");
    }
  }

  void check_range(std::size_t a, std::size_t b) const {
    if (a > b || b >= values_.size()) {
      throw std::out_of_range("range [" + std::to_string(a) + ", " + std::to_string(b) + "] invalid for n = " +
                              std::to_string(values_.size()));
    }
  }

  void check_update(const update_type& u) const {
    if (!admissible<A>(u)) throw std::invalid_argument("update not admissible for this algebra");
  }

  std::vector<value_type> values_;
  std::size_t k_;
  Refresh refresh_;
  std::vector<std::optional<update_type>> uagg_;
  std::vector<value_type> qagg_;
  std::vector<char> dirty_;
  std::uint64_t clock_ = 0;
  mutable OpCost cost_;
};

}  // namespace dtsched::bp
