#pragma once

#include "rooslab/integer.hpp"
#include "rooslab/order.hpp"
#include "rooslab/ring.hpp"
#include "rooslab/roos.hpp"
#include "rooslab/system.hpp"

#include <string>
#include <vector>

namespace rooslab {

struct Morphism {
  Index source = 0;
  Index target = 0;
  std::string label;
};

/// Finite category given by its morphisms and a composition table.
/// compose(g, f) = g o f, defined when target(f) == source(g).
class FiniteCategory {
 public:
  FiniteCategory() = default;
  /// `table[g][f]` holds g o f or -1 where not composable. Throws
  /// ValidationError unless identities, closure and associativity hold.
  FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                 std::vector<Index> identities,
                 std::vector<std::vector<Index>> table);

  Index object_count() const { return static_cast<Index>(objects_.size()); }
  Index morphism_count() const { return static_cast<Index>(morphisms_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const Morphism& morphism(Index m) const { return morphisms_[m]; }
  Index identity(Index object) const { return identities_[object]; }
  Index compose(Index g, Index f) const { return table_[g][f]; }

  /// Morphisms object a -> object b, in morphism order.
  std::vector<Index> hom(Index a, Index b) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<Index> identities_;
  std::vector<std::vector<Index>> table_;
};

/// One morphism a -> b per pair a <= b, ordered by (a, b).
FiniteCategory category_from_order(const QuasiOrder& q);

/// Contravariant functor into free modules: F(m: i -> j) : F(j) -> F(i),
/// shape rank(i) x rank(j).
struct ContravariantFunctor {
  Ring ring = Ring::integers();
  std::vector<Index> ranks;
  std::vector<IntMatrix> maps;
};

struct FunctorReport {
  bool valid = true;
  std::vector<std::string> violations;
};

FunctorReport validate_functor(const FiniteCategory& c, const ContravariantFunctor& f);

/// The system on its order viewed as a functor on category_from_order.
ContravariantFunctor functor_from_system(const InverseSystem& s);

/// Composable chains i0 -> i1 -> ... -> ik of k morphisms (objects for
/// k = 0), lexicographic in morphism order.
std::vector<std::vector<Index>> morphism_chains(const FiniteCategory& c, Index k);

/// Blocks indexed by morphism chains; the coboundary has the same shape as
/// the Roos one: F(m_1) on face 0, composition at interior faces, the last
/// morphism dropped on the final face. Throws ValidationError for a
/// non-functor.
RoosComplex nerve_complex(const FiniteCategory& c, const ContravariantFunctor& f,
                          Index k_max);

/// F(j) = rank copies per morphism i -> j; F(beta) sends the copy at
/// beta o alpha to the copy at alpha.
ContravariantFunctor corepresented_system(const FiniteCategory& c, Index i, Index rank,
                                          const Ring& ring = Ring::integers());

}  // namespace rooslab
