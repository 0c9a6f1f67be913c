#include "rooslab/integer.hpp"

namespace rooslab {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c)
      throw std::invalid_argument("int_matrix: ragged rows");
    Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntVector int_vector(std::initializer_list<long> entries) {
  IntVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (long x : entries) v(i++) = x;
  return v;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("multiply: inner dimensions differ");
  IntMatrix out = IntMatrix::Zero(a.rows(), b.cols());
  for (Index k = 0; k < a.cols(); ++k) {
    for (Index i = 0; i < a.rows(); ++i) {
      const Integer& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (Index j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) addmul(out(i, j), aik, b(k, j));
      }
    }
  }
  return out;
}

bool is_zero_matrix(const IntMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

Integer max_abs_entry(const IntMatrix& m) {
  Integer best = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (compare_abs(m(i, j), best) > 0) best = abs(m(i, j));
  return best;
}

}  // namespace rooslab
