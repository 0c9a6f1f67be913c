#pragma once

#include "rooslab/integer.hpp"
#include "rooslab/linalg.hpp"
#include "rooslab/order.hpp"
#include "rooslab/ring.hpp"
#include "rooslab/system.hpp"

#include <map>
#include <vector>

namespace rooslab {

/// One factor of a product module: a copy of a free module of `rank`,
/// placed at `offset` in the flat coordinate vector. The key is an index
/// tuple for the Roos complex and a morphism chain for nerve complexes.
struct Block {
  std::vector<Index> key;
  Index object = 0;
  Index rank = 0;
  Index offset = 0;
};

struct CochainModule {
  std::vector<Block> blocks;
  Index total_rank = 0;

  void add(std::vector<Index> key, Index object, Index rank);
  /// Block position of a key, or -1.
  Index find(const std::vector<Index>& key) const;

 private:
  std::map<std::vector<Index>, Index> lookup_;
};

/// Product modules K^0..K^n_max with differentials. delta[n] maps K^{n-1}
/// to K^n; delta[0] is the zero map out of K^{-1} = 0.
struct RoosComplex {
  Ring ring = Ring::integers();
  bool strict = false;
  std::vector<CochainModule> modules;
  std::vector<IntMatrix> delta;

  Index max_degree() const { return static_cast<Index>(modules.size()) - 1; }

  /// ker delta[n+1] / im delta[n]; requires n < max_degree().
  GroupInvariants cohomology(Index n) const;
};

struct Cochain {
  Index degree = 0;
  IntVector values;
};

struct ComplexOptions {
  bool strict = false;
  /// Recheck delta[n+1] * delta[n] = 0 before returning.
  bool verify = true;
};

/// Throws ValidationError for an invalid system.
RoosComplex build_complex(const InverseSystem& s, Index n_max,
                          ComplexOptions options = {});

/// Throws CompositionError if some delta[n+1] * delta[n] is nonzero.
void check_differentials(const RoosComplex& k);

GroupInvariants derived_limit(const InverseSystem& s, Index n,
                              ComplexOptions options = {});

/// lim^0 .. lim^n_max from a single complex.
std::vector<GroupInvariants> derived_limits(const InverseSystem& s, Index n_max,
                                            ComplexOptions options = {});

/// Kernel of prod G_lambda -> prod_{lambda <= mu} G_lambda,
/// (x) -> (p^mu_lambda x_mu - x_lambda).
GroupInvariants limit_direct(const InverseSystem& s);

/// Coefficients of a cochain at one block.
IntVector entry(const RoosComplex& k, const Cochain& u, const std::vector<Index>& key);

Cochain apply_delta(const RoosComplex& k, const Cochain& u);

/// (d_f u) at tuple h is u at h extended by f. u has degree n - 1 >= 1.
/// Every element of the index must lie below f (IndexNotDominatingError
/// otherwise); restrict to the down-set of f first when needed.
Cochain contract(const RoosComplex& k, const InverseSystem& s, const Cochain& u,
                 Index f);

}  // namespace rooslab
