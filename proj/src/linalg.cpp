#include "rooslab/linalg.hpp"

#include "rooslab/errors.hpp"
#include "sparse_elimination.hpp"

#include <algorithm>
#include <map>

namespace rooslab {
namespace {

using RowMajorIntMatrix =
    Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense Smith reduction. With kTransforms the unimodular factors and their
// inverses are accumulated; otherwise only the diagonal is produced.
template <bool kTransforms>
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m) : a_(m) {
    if constexpr (kTransforms) {
      u_ = IntMatrix::Identity(m.rows(), m.rows());
      u_inv_ = u_;
      v_ = IntMatrix::Identity(m.cols(), m.cols());
      v_inv_ = v_;
    }
  }

  void run() {
    const Index steps = std::min(a_.rows(), a_.cols());
    for (Index t = 0; t < steps; ++t) {
      Index pr, pc;
      if (!smallest_in_submatrix(t, pr, pc)) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      reduce_pivot(t);
      if (sign(a_(t, t)) < 0) negate_row(t);
      ++rank_;
    }
  }

  std::size_t rank() const { return rank_; }

  std::vector<Integer> nonzero_diagonal() const {
    std::vector<Integer> d;
    for (Index t = 0; t < static_cast<Index>(rank_); ++t) d.push_back(a_(t, t));
    return d;
  }

  SmithDecomposition decomposition() && {
    SmithDecomposition out;
    out.D = IntMatrix(a_);
    out.U = std::move(u_);
    out.U_inverse = std::move(u_inv_);
    out.V = std::move(v_);
    out.V_inverse = std::move(v_inv_);
    out.rank = rank_;
    return out;
  }

 private:
  // Smallest nonzero |a(i,j)| with i, j >= t; ties broken by lowest row then
  // lowest column (row-major scan with strict improvement).
  bool smallest_in_submatrix(Index t, Index& pr, Index& pc) const {
    bool found = false;
    for (Index i = t; i < a_.rows(); ++i) {
      for (Index j = t; j < a_.cols(); ++j) {
        const Integer& x = a_(i, j);
        if (is_zero(x)) continue;
        if (!found || compare_abs(x, a_(pr, pc)) < 0) {
          pr = i;
          pc = j;
          found = true;
          if (is_unit(x)) return true;
        }
      }
    }
    return found;
  }

  void reduce_pivot(Index t) {
    Integer q;
    for (;;) {
      for (Index i = t + 1; i < a_.rows(); ++i) {
        if (is_zero(a_(i, t))) continue;
        mpz_tdiv_q(raw(q), raw(a_(i, t)), raw(a_(t, t)));
        if (!is_zero(q)) row_addmul(i, t, q, t);
      }
      for (Index j = t + 1; j < a_.cols(); ++j) {
        if (is_zero(a_(t, j))) continue;
        mpz_tdiv_q(raw(q), raw(a_(t, j)), raw(a_(t, t)));
        if (!is_zero(q)) col_addmul(j, t, q, t);
      }
      // Remainders left in the pivot row/column: move the smallest one in
      // (column entries win ties, then lower index).
      Index best_r = -1, best_c = -1;
      const Integer* best = nullptr;
      for (Index i = t + 1; i < a_.rows(); ++i) {
        if (is_zero(a_(i, t))) continue;
        if (best == nullptr || compare_abs(a_(i, t), *best) < 0) {
          best = &a_(i, t);
          best_r = i;
        }
      }
      for (Index j = t + 1; j < a_.cols(); ++j) {
        if (is_zero(a_(t, j))) continue;
        if (best == nullptr || compare_abs(a_(t, j), *best) < 0) {
          best = &a_(t, j);
          best_c = j;
          best_r = -1;
        }
      }
      if (best_r >= 0) {
        swap_rows(t, best_r);
        continue;
      }
      if (best_c >= 0) {
        swap_cols(t, best_c);
        continue;
      }
      // Row and column clear; enforce divisibility of the trailing block.
      Index bad = -1;
      for (Index i = t + 1; i < a_.rows() && bad < 0; ++i)
        for (Index j = t + 1; j < a_.cols(); ++j)
          if (!divides(a_(t, t), a_(i, j))) {
            bad = i;
            break;
          }
      if (bad < 0) return;
      row_addmul(t, bad, Integer(-1), t);
    }
  }

  // row_i -= q * row_t (entries of a_ before column `from` are zero).
  void row_addmul(Index i, Index t, const Integer& q, Index from) {
    for (Index k = from; k < a_.cols(); ++k)
      if (!is_zero(a_(t, k))) submul(a_(i, k), q, a_(t, k));
    if constexpr (kTransforms) {
      for (Index k = 0; k < u_.cols(); ++k)
        if (!is_zero(u_(t, k))) submul(u_(i, k), q, u_(t, k));
      for (Index k = 0; k < u_inv_.rows(); ++k)
        if (!is_zero(u_inv_(k, i))) addmul(u_inv_(k, t), q, u_inv_(k, i));
    }
  }

  // col_j -= q * col_t
  void col_addmul(Index j, Index t, const Integer& q, Index from) {
    for (Index k = from; k < a_.rows(); ++k)
      if (!is_zero(a_(k, t))) submul(a_(k, j), q, a_(k, t));
    if constexpr (kTransforms) {
      for (Index k = 0; k < v_.rows(); ++k)
        if (!is_zero(v_(k, t))) submul(v_(k, j), q, v_(k, t));
      for (Index k = 0; k < v_inv_.cols(); ++k)
        if (!is_zero(v_inv_(j, k))) addmul(v_inv_(t, k), q, v_inv_(j, k));
    }
  }

  void swap_rows(Index i, Index j) {
    if (i == j) return;
    a_.row(i).swap(a_.row(j));
    if constexpr (kTransforms) {
      u_.row(i).swap(u_.row(j));
      u_inv_.col(i).swap(u_inv_.col(j));
    }
  }

  void swap_cols(Index i, Index j) {
    if (i == j) return;
    a_.col(i).swap(a_.col(j));
    if constexpr (kTransforms) {
      v_.col(i).swap(v_.col(j));
      v_inv_.row(i).swap(v_inv_.row(j));
    }
  }

  void negate_row(Index t) {
    for (Index k = 0; k < a_.cols(); ++k) mpz_neg(raw(a_(t, k)), raw(a_(t, k)));
    if constexpr (kTransforms) {
      for (Index k = 0; k < u_.cols(); ++k) mpz_neg(raw(u_(t, k)), raw(u_(t, k)));
      for (Index k = 0; k < u_inv_.rows(); ++k)
        mpz_neg(raw(u_inv_(k, t)), raw(u_inv_(k, t)));
    }
  }

  RowMajorIntMatrix a_;
  IntMatrix u_, u_inv_, v_, v_inv_;
  std::size_t rank_ = 0;
};

std::vector<Integer> dense_invariant_factors(const IntMatrix& m) {
  SmithReducer<false> reducer(m);
  reducer.run();
  return reducer.nonzero_diagonal();
}

template <class Arith>
std::vector<typename detail::SparseEliminator<Arith>::Row> sparse_rows(
    const IntMatrix& m, const Arith& arith) {
  using Eliminator = detail::SparseEliminator<Arith>;
  std::vector<typename Eliminator::Row> rows(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Integer& x = m(i, j);
      if (is_zero(x)) continue;
      if constexpr (std::is_same_v<Arith, detail::BigArith>) {
        rows[i].push_back({j, x});
      } else if constexpr (std::is_same_v<Arith, detail::PrimeArith>) {
        const Integer r = mod_floor(x, Integer(arith.p));
        if (!is_zero(r)) rows[i].push_back({j, r.template convert_to<std::int64_t>()});
      } else {
        rows[i].push_back({j, x.template convert_to<std::int64_t>()});
      }
    }
  }
  return rows;
}

bool fits_int64(const IntMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (mpz_fits_slong_p(raw(m(i, j))) == 0) return false;
  return true;
}

template <class Arith>
std::vector<Integer> sparse_invariant_factors(const IntMatrix& m,
                                              const Arith& arith) {
  detail::SparseEliminator<Arith> eliminator(arith, sparse_rows(m, arith),
                                             m.cols());
  const std::size_t units = eliminator.eliminate_units();
  const auto residual = eliminator.residual();
  std::vector<Integer> factors(units, Integer(1));
  if (residual.empty()) return factors;

  std::map<Index, Index> columns;
  for (const auto& row : residual)
    for (const auto& e : row) columns.emplace(e.col, 0);
  Index next = 0;
  for (auto& [col, pos] : columns) pos = next++;
  IntMatrix dense = IntMatrix::Zero(static_cast<Index>(residual.size()), next);
  for (std::size_t i = 0; i < residual.size(); ++i)
    for (const auto& e : residual[i]) dense(static_cast<Index>(i), columns[e.col]) = Integer(e.value);
  for (Integer& d : dense_invariant_factors(dense)) factors.push_back(std::move(d));
  return factors;
}

void require_composable(const IntMatrix& d_in, const IntMatrix& d_out) {
  if (d_out.cols() != d_in.rows())
    throw DimensionError("cohomology_at: d_out has " +
                         std::to_string(d_out.cols()) + " columns but d_in has " +
                         std::to_string(d_in.rows()) + " rows");
}

void require_complex(const IntMatrix& d_in, const IntMatrix& d_out,
                     const Ring& ring) {
  if (!ring.is_zero_matrix(multiply(d_out, d_in)))
    throw CompositionError("cohomology_at: d_out * d_in is not zero over " +
                           ring.tag());
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

IntMatrix scaled_identity(Index n, const Integer& s) {
  IntMatrix out = IntMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = s;
  return out;
}

}  // namespace

GroupInvariants GroupInvariants::from_cyclic_orders(
    std::size_t free_rank, const std::vector<Integer>& orders) {
  GroupInvariants g;
  g.free_rank = free_rank;
  std::vector<Integer> finite;
  for (const Integer& d : orders) {
    if (is_zero(d)) {
      ++g.free_rank;
    } else if (!is_unit(d)) {
      finite.push_back(abs(d));
    }
  }
  IntMatrix diag = IntMatrix::Zero(static_cast<Index>(finite.size()),
                                   static_cast<Index>(finite.size()));
  for (std::size_t i = 0; i < finite.size(); ++i)
    diag(static_cast<Index>(i), static_cast<Index>(i)) = finite[i];
  for (Integer& d : dense_invariant_factors(diag))
    if (!is_unit(d)) g.torsion.push_back(std::move(d));
  return g;
}

void GroupInvariants::check_canonical() const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2)
      throw ValidationError("torsion coefficient below 2: " + torsion[i].str());
    if (i > 0 && !divides(torsion[i - 1], torsion[i]))
      throw ValidationError("torsion coefficients do not form a divisor chain");
  }
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (Index t = 0; t < std::min(D.rows(), D.cols()); ++t) d.push_back(D(t, t));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithReducer<true> reducer(m);
  reducer.run();
  return std::move(reducer).decomposition();
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  if (m.size() == 0) return {};
  if (fits_int64(m)) {
    try {
      return sparse_invariant_factors(m, detail::CheckedInt64Arith{});
    } catch (const detail::Int64Overflow&) {
      // fall through to exact arithmetic
    }
  }
  return sparse_invariant_factors(m, detail::BigArith{});
}

std::size_t rank(const IntMatrix& m) { return invariant_factors(m).size(); }

std::size_t rank_mod_prime(const IntMatrix& m, const Integer& p) {
  if (p < 2 || p >= (Integer(1) << 62))
    throw std::invalid_argument("rank_mod_prime: modulus out of range");
  if (m.size() == 0) return 0;
  const detail::PrimeArith arith{p.convert_to<std::int64_t>()};
  detail::SparseEliminator<detail::PrimeArith> eliminator(
      arith, sparse_rows(m, arith), m.cols());
  return eliminator.eliminate_units();
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const SmithDecomposition s = smith_normal_form(m);
  const Index r = static_cast<Index>(s.rank);
  return s.V.rightCols(m.cols() - r);
}

GroupInvariants cokernel(const IntMatrix& m) {
  const auto factors = invariant_factors(m);
  return GroupInvariants::from_cyclic_orders(
      static_cast<std::size_t>(m.rows()) - factors.size(), factors);
}

LinearSolver::LinearSolver(const IntMatrix& m, const Ring& ring)
    : ring_(ring), rows_(m.rows()), cols_(m.cols()) {
  if (ring.is_modular()) {
    smith_ = smith_normal_form(
        hcat(ring.reduce(m), scaled_identity(m.rows(), ring.modulus())));
  } else {
    smith_ = smith_normal_form(m);
  }
}

std::optional<IntVector> LinearSolver::solve(const IntVector& b) const {
  if (b.size() != rows_)
    throw DimensionError("solve: right-hand side has " + std::to_string(b.size()) +
                         " entries, matrix has " + std::to_string(rows_) + " rows");
  const IntVector c = smith_.U * ring_.reduce(b);
  const Index r = static_cast<Index>(smith_.rank);
  IntVector y = IntVector::Zero(smith_.V.rows());
  for (Index i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!divides(smith_.D(i, i), c(i))) return std::nullopt;
      mpz_divexact(raw(y(i)), raw(c(i)), raw(smith_.D(i, i)));
    } else if (!is_zero(c(i))) {
      return std::nullopt;
    }
  }
  const IntVector x = smith_.V * y;
  return ring_.reduce(IntVector(x.head(cols_)));
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b,
                               const Ring& ring) {
  return LinearSolver(m, ring).solve(b);
}

GroupInvariants cohomology_at(const IntMatrix& d_in_raw,
                              const IntMatrix& d_out_raw, const Ring& ring) {
  require_composable(d_in_raw, d_out_raw);
  const IntMatrix d_in = ring.reduce(d_in_raw);
  const IntMatrix d_out = ring.reduce(d_out_raw);
  require_complex(d_in, d_out, ring);
  const std::size_t n = static_cast<std::size_t>(d_in.rows());

  if (!ring.is_modular()) {
    // ker(d_out) is saturated, so the torsion of ker/im is the torsion of
    // Z^n / im(d_in) and only the rank of d_out is needed.
    const auto in_factors = invariant_factors(d_in);
    const std::size_t out_rank = rank(d_out);
    GroupInvariants g =
        GroupInvariants::from_cyclic_orders(0, in_factors);
    g.free_rank = n - out_rank - in_factors.size();
    return g;
  }
  if (ring.is_prime_field() && ring.modulus() < (Integer(1) << 62)) {
    const std::size_t dim = n - rank_mod_prime(d_out, ring.modulus()) -
                            rank_mod_prime(d_in, ring.modulus());
    GroupInvariants g;
    g.torsion.assign(dim, ring.modulus());
    return g;
  }
  return cohomology_by_kernel_basis(d_in, d_out, ring);
}

GroupInvariants cohomology_by_kernel_basis(const IntMatrix& d_in_raw,
                                           const IntMatrix& d_out_raw,
                                           const Ring& ring) {
  require_composable(d_in_raw, d_out_raw);
  const IntMatrix d_in = ring.reduce(d_in_raw);
  const IntMatrix d_out = ring.reduce(d_out_raw);
  require_complex(d_in, d_out, ring);
  const Index n = d_in.rows();

  IntMatrix basis;      // columns span the cycle lattice inside Z^n
  IntMatrix relations;  // generators of the boundary lattice (plus m Z^n)
  if (ring.is_modular()) {
    const IntMatrix lifted =
        kernel_basis(hcat(d_out, scaled_identity(d_out.rows(), ring.modulus())));
    basis = lifted.topRows(n);
    relations = hcat(d_in, scaled_identity(n, ring.modulus()));
  } else {
    basis = kernel_basis(d_out);
    relations = d_in;
  }
  const Index k = basis.cols();
  if (k == 0) return {};

  const LinearSolver coordinates(basis, Ring::integers());
  IntMatrix in_basis(k, relations.cols());
  for (Index j = 0; j < relations.cols(); ++j) {
    auto y = coordinates.solve(relations.col(j));
    if (!y) throw CompositionError("boundary does not lie in the cycle lattice");
    in_basis.col(j) = *y;
  }
  return cokernel(in_basis);
}

bool is_surjective(const IntMatrix& m, const Ring& ring) {
  if (m.rows() == 0) return true;
  const IntMatrix full =
      ring.is_modular() ? hcat(ring.reduce(m), scaled_identity(m.rows(), ring.modulus()))
                        : m;
  return cokernel(full).is_trivial();
}

bool is_injective(const IntMatrix& m, const Ring& ring) {
  if (m.cols() == 0) return true;
  const auto factors = invariant_factors(ring.reduce(m));
  if (static_cast<Index>(factors.size()) != m.cols()) return false;
  if (!ring.is_modular()) return true;
  return std::all_of(factors.begin(), factors.end(), [&](const Integer& d) {
    return is_unit(gcd(d, ring.modulus()));
  });
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(raw(n), 30) > 0;
}

}  // namespace rooslab
