#pragma once

// Dense elimination over a field: Q or Z/p. Rows are reduced with the zero
// pattern of the pivot row, which keeps the mostly sparse differentials cheap.

#include "rooslab/integer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rooslab {

struct PrimeField {
  using Value = std::int64_t;
  std::int64_t p = 2;

  std::string name() const { return "Z/" + std::to_string(p); }
  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value from(const Integer& x) const {
    return mod_floor(x, Integer(p)).convert_to<std::int64_t>();
  }
  bool is_zero(Value a) const { return a == 0; }
  Value add(Value a, Value b) const { return a + b >= p ? a + b - p : a + b; }
  Value sub(Value a, Value b) const { return a >= b ? a - b : a - b + p; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>((static_cast<__int128>(a) * b) % p);
  }
  Value inv(Value a) const {
    Value t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      const Value q = r / nr;
      const Value tt = t - q * nt;
      t = nt;
      nt = tt;
      const Value rr = r - q * nr;
      r = nr;
      nr = rr;
    }
    return t < 0 ? t + p : t;
  }
};

struct RationalField {
  using Value = Rational;

  std::string name() const { return "Q"; }
  Value zero() const { return Value(0); }
  Value one() const { return Value(1); }
  Value from(const Integer& x) const { return Value(x); }
  bool is_zero(const Value& a) const { return a == 0; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value inv(const Value& a) const { return 1 / a; }
};

template <class F>
struct FieldMatrix {
  using Value = typename F::Value;
  Index rows = 0;
  Index cols = 0;
  std::vector<Value> data;

  FieldMatrix() = default;
  FieldMatrix(const F& field, Index r, Index c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r * c), field.zero()) {}

  Value& operator()(Index r, Index c) { return data[r * cols + c]; }
  const Value& operator()(Index r, Index c) const { return data[r * cols + c]; }
};

template <class F>
FieldMatrix<F> to_field(const F& field, const IntMatrix& m) {
  FieldMatrix<F> out(field, m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (!is_zero(m(r, c))) out(r, c) = field.from(m(r, c));
  return out;
}

template <class F>
FieldMatrix<F> hcat(const F& field, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  FieldMatrix<F> out(field, a.rows, a.cols + b.cols);
  for (Index r = 0; r < a.rows; ++r) {
    for (Index c = 0; c < a.cols; ++c) out(r, c) = a(r, c);
    for (Index c = 0; c < b.cols; ++c) out(r, a.cols + c) = b(r, c);
  }
  return out;
}

template <class F>
FieldMatrix<F> multiply(const F& field, const FieldMatrix<F>& a, const FieldMatrix<F>& b) {
  FieldMatrix<F> out(field, a.rows, b.cols);
  for (Index r = 0; r < a.rows; ++r)
    for (Index k = 0; k < a.cols; ++k) {
      if (field.is_zero(a(r, k))) continue;
      for (Index c = 0; c < b.cols; ++c) {
        if (field.is_zero(b(k, c))) continue;
        out(r, c) = field.add(out(r, c), field.mul(a(r, k), b(k, c)));
      }
    }
  return out;
}

template <class F>
FieldMatrix<F> columns(const F& field, const FieldMatrix<F>& m, const std::vector<Index>& picks) {
  FieldMatrix<F> out(field, m.rows, static_cast<Index>(picks.size()));
  for (Index r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < picks.size(); ++c) out(r, static_cast<Index>(c)) = m(r, picks[c]);
  return out;
}

template <class F>
struct Echelon {
  FieldMatrix<F> reduced;      // reduced row echelon form
  std::vector<Index> pivots;   // pivot column of each leading row
};

/// Reduced row echelon form; pivot columns are taken greedily left to right.
template <class F>
Echelon<F> row_reduce(const F& field, FieldMatrix<F> m, Index column_limit = -1) {
  const Index limit = column_limit < 0 ? m.cols : column_limit;
  Echelon<F> e;
  Index row = 0;
  std::vector<Index> support;
  for (Index c = 0; c < limit && row < m.rows; ++c) {
    Index piv = -1;
    for (Index r = row; r < m.rows; ++r)
      if (!field.is_zero(m(r, c))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (Index k = 0; k < m.cols; ++k) std::swap(m(piv, k), m(row, k));
    const auto scale = field.inv(m(row, c));
    support.clear();
    for (Index k = c; k < m.cols; ++k) {
      if (field.is_zero(m(row, k))) continue;
      m(row, k) = field.mul(m(row, k), scale);
      support.push_back(k);
    }
    for (Index r = 0; r < m.rows; ++r) {
      if (r == row || field.is_zero(m(r, c))) continue;
      const auto factor = m(r, c);
      for (Index k : support) m(r, k) = field.sub(m(r, k), field.mul(factor, m(row, k)));
    }
    e.pivots.push_back(c);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

template <class F>
Index rank(const F& field, const FieldMatrix<F>& m) {
  return static_cast<Index>(row_reduce(field, m).pivots.size());
}

/// Basis of the null space, as columns.
template <class F>
FieldMatrix<F> kernel(const F& field, const FieldMatrix<F>& m) {
  const Echelon<F> e = row_reduce(field, m);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
  for (Index c : e.pivots) is_pivot[c] = 1;
  std::vector<Index> free;
  for (Index c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  FieldMatrix<F> out(field, m.cols, static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Index fc = free[k];
    out(fc, static_cast<Index>(k)) = field.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      out(e.pivots[r], static_cast<Index>(k)) =
          field.sub(field.zero(), e.reduced(static_cast<Index>(r), fc));
  }
  return out;
}

/// X with M X = B (free variables zero), or nullopt.
template <class F>
std::optional<FieldMatrix<F>> solve(const F& field, const FieldMatrix<F>& m,
                                    const FieldMatrix<F>& b) {
  const Echelon<F> e = row_reduce(field, hcat(field, m, b), m.cols);
  const Index r = static_cast<Index>(e.pivots.size());
  for (Index row = r; row < m.rows; ++row)
    for (Index c = 0; c < b.cols; ++c)
      if (!field.is_zero(e.reduced(row, m.cols + c))) return std::nullopt;
  FieldMatrix<F> x(field, m.cols, b.cols);
  for (Index row = 0; row < r; ++row)
    for (Index c = 0; c < b.cols; ++c) x(e.pivots[row], c) = e.reduced(row, m.cols + c);
  return x;
}

}  // namespace rooslab
