#pragma once

#include "rooslab/integer.hpp"
#include "rooslab/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rooslab {

/// Canonical form Z^r + Z/d_1 + ... + Z/d_k of a finitely generated abelian
/// group, with d_1 | d_2 | ... | d_k and every d_i >= 2.
struct GroupInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  /// Canonicalizes an arbitrary list of cyclic orders (entries 0 are read as
  /// free summands, units are dropped, the rest is put in divisor-chain form).
  static GroupInvariants from_cyclic_orders(std::size_t free_rank,
                                            const std::vector<Integer>& orders);

  /// Throws ValidationError unless the canonical-form invariants hold.
  void check_canonical() const;

  friend bool operator==(const GroupInvariants&,
                         const GroupInvariants&) = default;
};

/// U * M * V = D with U, V unimodular and D in Smith normal form.
/// The inverses are tracked alongside so M = U_inverse * D * V_inverse.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

/// Deterministic pivoting: smallest nonzero absolute value, then lowest row,
/// then lowest column.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Nonzero invariant factors d_1 | ... | d_r of m (so r = rank over Q).
/// Uses sparse unit-pivot elimination before a dense Smith pass on the
/// residual block; the result is canonical, independent of pivot order.
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Rank over the field Z/p; p must be prime and below 2^62.
std::size_t rank_mod_prime(const IntMatrix& m, const Integer& p);

/// Saturated basis (as columns) of the integer kernel of m.
IntMatrix kernel_basis(const IntMatrix& m);

/// Cokernel Z^rows / im(m).
GroupInvariants cokernel(const IntMatrix& m);

/// Factored solver for M x = b over a ring; the factorization is reused
/// across right-hand sides.
class LinearSolver {
 public:
  LinearSolver(const IntMatrix& m, const Ring& ring);

  /// Canonical solution via Smith back-substitution, or nullopt. Over Z/m
  /// entries are reduced to [0, m). Throws DimensionError on size mismatch.
  std::optional<IntVector> solve(const IntVector& b) const;

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  Ring ring_;
  Index rows_;
  Index cols_;
  SmithDecomposition smith_;
};

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b,
                               const Ring& ring);

/// ker(d_out) / im(d_in) over the ring. Requires d_out.cols() == d_in.rows()
/// and d_out * d_in == 0 over the ring (CompositionError otherwise).
GroupInvariants cohomology_at(const IntMatrix& d_in, const IntMatrix& d_out,
                              const Ring& ring);

/// Same subquotient through an explicit kernel basis and relation matrix
/// (lifting to Z and adjoining m * identity over Z/m). Slower; kept as an
/// independent route.
GroupInvariants cohomology_by_kernel_basis(const IntMatrix& d_in,
                                           const IntMatrix& d_out,
                                           const Ring& ring);

/// Surjectivity / injectivity of x -> m x between free modules over the ring.
bool is_surjective(const IntMatrix& m, const Ring& ring);
bool is_injective(const IntMatrix& m, const Ring& ring);

bool is_probable_prime(const Integer& n);

}  // namespace rooslab
