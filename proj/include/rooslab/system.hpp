#pragma once

#include "rooslab/integer.hpp"
#include "rooslab/order.hpp"
#include "rooslab/ring.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rooslab {

/// Declared bonds keyed by (lambda, mu) with lambda <= mu; the matrix maps
/// G_mu -> G_lambda and has shape rank(lambda) x rank(mu).
using BondTable = std::map<std::pair<Index, Index>, IntMatrix>;

/// Inverse system of free modules over a finite quasi-order. Bonds for
/// every related pair are stored; undeclared ones are derived by composing
/// declared bonds along a shortest path (identities on the diagonal).
class InverseSystem {
 public:
  InverseSystem() = default;
  /// Throws ValidationError if a shape is wrong or a related pair has no
  /// derivable bond.
  InverseSystem(QuasiOrder index, Ring ring, std::vector<Index> ranks,
                const BondTable& declared);

  /// Same rank everywhere, identity bonds.
  static InverseSystem constant(QuasiOrder index, Ring ring, Index rank);

  const QuasiOrder& index() const { return index_; }
  const Ring& ring() const { return ring_; }
  Index size() const { return index_.size(); }
  Index rank(Index lambda) const { return ranks_[lambda]; }
  const std::vector<Index>& ranks() const { return ranks_; }

  /// p^mu_lambda : G_mu -> G_lambda; requires lambda <= mu.
  const IntMatrix& bond(Index lambda, Index mu) const;

  /// Every bond for lambda <= mu, including derived ones.
  BondTable all_bonds() const;

  friend bool operator==(const InverseSystem& a, const InverseSystem& b);

 private:
  QuasiOrder index_;
  Ring ring_;
  std::vector<Index> ranks_;
  std::vector<IntMatrix> bonds_;  // n * n, empty where unrelated
};

struct SystemReport {
  bool valid = true;
  bool surjective = true;
  std::vector<std::string> violations;
  /// (lambda, mu) pairs whose bond is not surjective.
  std::vector<std::pair<Index, Index>> non_surjective;
};

/// Identity bonds on the diagonal and p^mu_lambda p^nu_mu = p^nu_lambda for
/// all lambda <= mu <= nu, reduced over the ring.
SystemReport validate_system(const InverseSystem& s);

/// Throws ValidationError listing the violations.
void require_valid(const InverseSystem& s);

InverseSystem restrict(const InverseSystem& s, const std::vector<Index>& subset);

/// Object at m is G_phi(m), bond for m <= m' is p^phi(m')_phi(m).
InverseSystem pullback(const InverseSystem& s, const MonotoneMap& phi);

struct TruncationSpec {
  Index columns = 0;
  std::vector<std::vector<long>> family;
  Ring ring = Ring::integers();
};

struct TruncatedSystem {
  InverseSystem system;
  /// Grid points (i, j), j < f(i), labelling each object's coordinates.
  std::vector<std::vector<std::pair<long, long>>> coordinates;
  std::string note;
};

/// Finite truncation of the grid systems: everywhere domination on the
/// family, coordinate projections as bonds.
TruncatedSystem truncated_A(const TruncationSpec& spec);

/// Levelwise map S -> T: one matrix per index, shape rank_T x rank_S.
using SystemMap = std::vector<IntMatrix>;

struct SystemSES {
  InverseSystem left;
  InverseSystem middle;
  InverseSystem right;
  SystemMap f;  // left -> middle
  SystemMap g;  // middle -> right
};

struct SesReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Levelwise exactness and commutation with every bond, exactly.
SesReport validate_ses(const SystemSES& e);

}  // namespace rooslab
