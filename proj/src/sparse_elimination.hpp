#pragma once

// Sparse Schur-complement elimination on unit pivots. Used for ranks and
// invariant factors of the (very sparse, mostly +-1) differentials.

#include "rooslab/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace rooslab::detail {

struct Int64Overflow {};

struct CheckedInt64Arith {
  using Value = std::int64_t;
  bool is_unit(Value v) const { return v == 1 || v == -1; }
  bool is_zero(Value v) const { return v == 0; }
  /// Multiplier f with a - f * pivot == 0.
  Value factor(Value a, Value pivot) const {
    Value f;
    if (__builtin_mul_overflow(a, pivot, &f)) throw Int64Overflow{};
    return f;
  }
  /// a - f * b
  Value submul(Value a, Value f, Value b) const {
    Value p, r;
    if (__builtin_mul_overflow(f, b, &p)) throw Int64Overflow{};
    if (__builtin_sub_overflow(a, p, &r)) throw Int64Overflow{};
    return r;
  }
};

struct BigArith {
  using Value = Integer;
  bool is_unit(const Value& v) const { return rooslab::is_unit(v); }
  bool is_zero(const Value& v) const { return rooslab::is_zero(v); }
  Value factor(const Value& a, const Value& pivot) const { return a * pivot; }
  Value submul(Value a, const Value& f, const Value& b) const {
    rooslab::submul(a, f, b);
    return a;
  }
};

struct PrimeArith {
  using Value = std::int64_t;
  std::int64_t p;
  bool is_unit(Value v) const { return v != 0; }
  bool is_zero(Value v) const { return v == 0; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>((static_cast<__int128>(a) * b) % p);
  }
  Value inverse(Value a) const {
    // Extended Euclid; a is nonzero mod p.
    Value t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      const Value q = r / new_r;
      std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
      std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    return t < 0 ? t + p : t;
  }
  Value factor(Value a, Value pivot) const { return mul(a, inverse(pivot)); }
  Value submul(Value a, Value f, Value b) const {
    Value r = (a - mul(f, b)) % p;
    return r < 0 ? r + p : r;
  }
};

template <class Arith>
class SparseEliminator {
 public:
  using Value = typename Arith::Value;
  struct Entry {
    Index col;
    Value value;
  };
  using Row = std::vector<Entry>;

  SparseEliminator(Arith arith, std::vector<Row> rows, Index cols)
      : arith_(std::move(arith)),
        rows_(std::move(rows)),
        row_alive_(rows_.size(), true),
        col_alive_(static_cast<std::size_t>(cols), true),
        col_count_(static_cast<std::size_t>(cols), 0),
        col_rows_(static_cast<std::size_t>(cols)),
        stamp_(rows_.size(), 0) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (const Entry& e : rows_[i]) {
        ++col_count_[e.col];
        col_rows_[e.col].push_back(static_cast<Index>(i));
      }
    }
    for (Index c = 0; c < cols; ++c)
      if (col_count_[c] > 0) heap_.push({col_count_[c], c});
  }

  /// Eliminates unit pivots until none is left; returns how many were used.
  std::size_t eliminate_units() {
    std::size_t pivots = 0;
    while (!heap_.empty()) {
      const auto [count, c] = heap_.top();
      heap_.pop();
      if (!col_alive_[c] || count != col_count_[c] || count == 0) continue;
      const Index r = choose_pivot_row(c);
      if (r < 0) continue;
      pivot(r, c);
      ++pivots;
    }
    return pivots;
  }

  /// Remaining rows (with entries) after elimination; column indices are
  /// the original ones.
  std::vector<Row> residual() const {
    std::vector<Row> out;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (row_alive_[i] && !rows_[i].empty()) out.push_back(rows_[i]);
    return out;
  }

 private:
  static const Entry* find(const Row& row, Index c) {
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const Entry& e, Index col) { return e.col < col; });
    return (it != row.end() && it->col == c) ? &*it : nullptr;
  }

  Index choose_pivot_row(Index c) {
    Index best = -1;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (Index i : col_rows_[c]) {
      if (!row_alive_[i]) continue;
      const Entry* e = find(rows_[i], c);
      if (e == nullptr || !arith_.is_unit(e->value)) continue;
      if (rows_[i].size() < best_len) {
        best = i;
        best_len = rows_[i].size();
      }
    }
    return best;
  }

  void bump(Index col, int delta) {
    col_count_[col] = static_cast<std::size_t>(
        static_cast<long long>(col_count_[col]) + delta);
    changed_.push_back(col);
  }

  void pivot(Index r, Index c) {
    row_alive_[r] = false;
    const Row pivot_row = rows_[r];
    const Value pivot_value = find(pivot_row, c)->value;
    for (const Entry& e : pivot_row) bump(e.col, -1);

    ++generation_;
    const std::vector<Index> targets = col_rows_[c];
    for (Index i : targets) {
      if (!row_alive_[i] || stamp_[i] == generation_) continue;
      stamp_[i] = generation_;
      const Entry* e = find(rows_[i], c);
      if (e == nullptr) continue;
      const Value f = arith_.factor(e->value, pivot_value);
      rows_[i] = combine(i, rows_[i], f, pivot_row);
    }
    col_alive_[c] = false;
    col_rows_[c].clear();
    col_rows_[c].shrink_to_fit();
    for (Index col : changed_)
      if (col_alive_[col] && col_count_[col] > 0)
        heap_.push({col_count_[col], col});
    changed_.clear();
  }

  // row - f * pivot_row, maintaining column bookkeeping.
  Row combine(Index i, const Row& row, const Value& f, const Row& pivot_row) {
    Row out;
    out.reserve(row.size() + pivot_row.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < pivot_row.size()) {
      if (b == pivot_row.size() ||
          (a < row.size() && row[a].col < pivot_row[b].col)) {
        out.push_back(row[a++]);
      } else if (a == row.size() || pivot_row[b].col < row[a].col) {
        Value v = arith_.submul(Value{0}, f, pivot_row[b].value);
        const Index col = pivot_row[b].col;
        ++b;
        if (arith_.is_zero(v)) continue;
        bump(col, +1);
        col_rows_[col].push_back(i);
        out.push_back({col, std::move(v)});
      } else {
        Value v = arith_.submul(row[a].value, f, pivot_row[b].value);
        const Index col = row[a].col;
        ++a;
        ++b;
        if (arith_.is_zero(v)) {
          bump(col, -1);
          continue;
        }
        out.push_back({col, std::move(v)});
      }
    }
    return out;
  }

  Arith arith_;
  std::vector<Row> rows_;
  std::vector<bool> row_alive_;
  std::vector<bool> col_alive_;
  std::vector<std::size_t> col_count_;
  std::vector<std::vector<Index>> col_rows_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t generation_ = 0;
  std::vector<Index> changed_;
  std::priority_queue<std::pair<std::size_t, Index>,
                      std::vector<std::pair<std::size_t, Index>>,
                      std::greater<>>
      heap_;
};

}  // namespace rooslab::detail
