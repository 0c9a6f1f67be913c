#include "rooslab/nerve.hpp"

#include "rooslab/errors.hpp"

#include <algorithm>
#include <functional>

namespace rooslab {

FiniteCategory::FiniteCategory(std::vector<std::string> objects,
                               std::vector<Morphism> morphisms,
                               std::vector<Index> identities,
                               std::vector<std::vector<Index>> table)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      table_(std::move(table)) {
  const Index n = morphism_count();
  const Index o = object_count();
  for (const Morphism& m : morphisms_)
    if (m.source < 0 || m.source >= o || m.target < 0 || m.target >= o)
      throw ValidationError("morphism " + m.label + " has an unknown endpoint");
  if (static_cast<Index>(identities_.size()) != o)
    throw ValidationError("one identity per object required");
  if (static_cast<Index>(table_.size()) != n)
    throw ValidationError("composition table has the wrong size");
  for (const auto& row : table_)
    if (static_cast<Index>(row.size()) != n)
      throw ValidationError("composition table has the wrong size");
  for (Index a = 0; a < o; ++a) {
    const Index id = identities_[a];
    if (id < 0 || id >= n || morphisms_[id].source != a || morphisms_[id].target != a)
      throw ValidationError("identity of " + objects_[a] + " is not an endomorphism");
  }
  for (Index g = 0; g < n; ++g)
    for (Index f = 0; f < n; ++f) {
      const Index gf = table_[g][f];
      const bool composable = morphisms_[f].target == morphisms_[g].source;
      if (!composable) {
        if (gf != -1)
          throw ValidationError("composite defined for non-composable pair " +
                                morphisms_[g].label + ", " + morphisms_[f].label);
        continue;
      }
      if (gf < 0 || gf >= n || morphisms_[gf].source != morphisms_[f].source ||
          morphisms_[gf].target != morphisms_[g].target)
        throw ValidationError("bad composite " + morphisms_[g].label + " o " +
                              morphisms_[f].label);
    }
  for (Index f = 0; f < n; ++f) {
    if (table_[identities_[morphisms_[f].target]][f] != f ||
        table_[f][identities_[morphisms_[f].source]] != f)
      throw ValidationError("identity law fails at " + morphisms_[f].label);
  }
  for (Index f = 0; f < n; ++f)
    for (Index g = 0; g < n; ++g) {
      if (table_[g][f] < 0) continue;
      for (Index h = 0; h < n; ++h) {
        if (table_[h][g] < 0) continue;
        if (table_[h][table_[g][f]] != table_[table_[h][g]][f])
          throw ValidationError("associativity fails at " + morphisms_[h].label +
                                ", " + morphisms_[g].label + ", " + morphisms_[f].label);
      }
    }
}

std::vector<Index> FiniteCategory::hom(Index a, Index b) const {
  std::vector<Index> out;
  for (Index m = 0; m < morphism_count(); ++m)
    if (morphisms_[m].source == a && morphisms_[m].target == b) out.push_back(m);
  return out;
}

FiniteCategory category_from_order(const QuasiOrder& q) {
  std::vector<Morphism> morphisms;
  std::vector<Index> id(static_cast<std::size_t>(q.size()));
  std::vector<Index> at(static_cast<std::size_t>(q.size() * q.size()), -1);
  for (const auto& [a, b] : q.relations()) {
    at[a * q.size() + b] = static_cast<Index>(morphisms.size());
    if (a == b) id[a] = static_cast<Index>(morphisms.size());
    morphisms.push_back(Morphism{a, b, q.label(a) + "<=" + q.label(b)});
  }
  const Index n = static_cast<Index>(morphisms.size());
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n, -1));
  for (Index g = 0; g < n; ++g)
    for (Index f = 0; f < n; ++f)
      if (morphisms[f].target == morphisms[g].source)
        table[g][f] = at[morphisms[f].source * q.size() + morphisms[g].target];
  return FiniteCategory(q.labels(), morphisms, id, table);
}

FunctorReport validate_functor(const FiniteCategory& c, const ContravariantFunctor& f) {
  FunctorReport r;
  if (static_cast<Index>(f.ranks.size()) != c.object_count() ||
      static_cast<Index>(f.maps.size()) != c.morphism_count()) {
    r.valid = false;
    r.violations.push_back("functor needs one rank per object and one map per morphism");
    return r;
  }
  for (Index m = 0; m < c.morphism_count(); ++m) {
    const Morphism& mm = c.morphism(m);
    if (f.maps[m].rows() != f.ranks[mm.source] || f.maps[m].cols() != f.ranks[mm.target])
      r.violations.push_back("map of " + mm.label + " has the wrong shape");
  }
  if (!r.violations.empty()) {
    r.valid = false;
    return r;
  }
  for (Index a = 0; a < c.object_count(); ++a)
    if (!f.ring.equal(f.maps[c.identity(a)], IntMatrix::Identity(f.ranks[a], f.ranks[a])))
      r.violations.push_back("identity of " + c.objects()[a] + " not sent to the identity");
  for (Index g = 0; g < c.morphism_count(); ++g)
    for (Index h = 0; h < c.morphism_count(); ++h) {
      const Index gh = c.compose(g, h);
      if (gh < 0) continue;
      // F(g o h) = F(h) F(g)
      if (!f.ring.equal(multiply(f.maps[h], f.maps[g]), f.maps[gh]))
        r.violations.push_back("composition fails at " + c.morphism(g).label + " o " +
                               c.morphism(h).label);
    }
  r.valid = r.violations.empty();
  return r;
}

ContravariantFunctor functor_from_system(const InverseSystem& s) {
  ContravariantFunctor f;
  f.ring = s.ring();
  f.ranks = s.ranks();
  for (const auto& [a, b] : s.index().relations()) f.maps.push_back(s.bond(a, b));
  return f;
}

std::vector<std::vector<Index>> morphism_chains(const FiniteCategory& c, Index k) {
  std::vector<std::vector<Index>> out;
  if (k == 0) {
    for (Index a = 0; a < c.object_count(); ++a) out.push_back({a});
    return out;
  }
  std::vector<Index> chain;
  std::function<void()> rec = [&] {
    if (static_cast<Index>(chain.size()) == k) {
      out.push_back(chain);
      return;
    }
    for (Index m = 0; m < c.morphism_count(); ++m) {
      if (!chain.empty() && c.morphism(chain.back()).target != c.morphism(m).source)
        continue;
      chain.push_back(m);
      rec();
      chain.pop_back();
    }
  };
  rec();
  return out;
}

RoosComplex nerve_complex(const FiniteCategory& c, const ContravariantFunctor& f,
                          Index k_max) {
  if (k_max < 0) throw DimensionError("negative degree");
  const FunctorReport report = validate_functor(c, f);
  if (!report.valid) {
    std::string msg = "not a functor:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  RoosComplex k;
  k.ring = f.ring;
  for (Index n = 0; n <= k_max; ++n) {
    CochainModule mod;
    for (auto& chain : morphism_chains(c, n)) {
      const Index first = n == 0 ? chain[0] : c.morphism(chain[0]).source;
      mod.add(std::move(chain), first, f.ranks[first]);
    }
    k.modules.push_back(std::move(mod));
  }
  k.delta.push_back(IntMatrix::Zero(k.modules[0].total_rank, 0));
  for (Index n = 1; n <= k_max; ++n) {
    const CochainModule& src = k.modules[n - 1];
    const CochainModule& dst = k.modules[n];
    IntMatrix d = IntMatrix::Zero(dst.total_rank, src.total_rank);
    for (const Block& b : dst.blocks) {
      const std::vector<Index>& ch = b.key;
      auto face_key = [&](Index j) -> std::vector<Index> {
        if (n == 1) {
          // Faces of a single morphism are its target and its source.
          return {j == 0 ? c.morphism(ch[0]).target : c.morphism(ch[0]).source};
        }
        std::vector<Index> out;
        for (Index t = 0; t < n; ++t) {
          if (j == 0 && t == 0) continue;
          if (j == n && t == n - 1) continue;
          if (j > 0 && j < n && t == j - 1) {
            out.push_back(c.compose(ch[j], ch[j - 1]));
            continue;
          }
          if (j > 0 && j < n && t == j) continue;
          out.push_back(ch[t]);
        }
        return out;
      };
      const Block& f0 = src.blocks[src.find(face_key(0))];
      d.block(b.offset, f0.offset, b.rank, f0.rank) += f.maps[ch[0]];
      for (Index j = 1; j <= n; ++j) {
        const Block& fj = src.blocks[src.find(face_key(j))];
        const Integer sign = (j % 2 == 0) ? 1 : -1;
        for (Index r = 0; r < b.rank; ++r) d(b.offset + r, fj.offset + r) += sign;
      }
    }
    k.delta.push_back(k.ring.reduce(d));
  }
  check_differentials(k);
  return k;
}

ContravariantFunctor corepresented_system(const FiniteCategory& c, Index i, Index rank,
                                          const Ring& ring) {
  if (i < 0 || i >= c.object_count()) throw ValidationError("unknown object");
  if (rank < 0) throw ValidationError("negative rank");
  ContravariantFunctor f;
  f.ring = ring;
  std::vector<std::vector<Index>> homs;
  for (Index j = 0; j < c.object_count(); ++j) {
    homs.push_back(c.hom(i, j));
    f.ranks.push_back(static_cast<Index>(homs.back().size()) * rank);
  }
  for (Index b = 0; b < c.morphism_count(); ++b) {
    const Index j1 = c.morphism(b).source;
    const Index j2 = c.morphism(b).target;
    IntMatrix m = IntMatrix::Zero(f.ranks[j1], f.ranks[j2]);
    const auto& h2 = homs[j2];
    for (std::size_t a = 0; a < homs[j1].size(); ++a) {
      const Index composite = c.compose(b, homs[j1][a]);
      const std::size_t col =
          static_cast<std::size_t>(std::find(h2.begin(), h2.end(), composite) - h2.begin());
      for (Index t = 0; t < rank; ++t)
        m(static_cast<Index>(a) * rank + t, static_cast<Index>(col) * rank + t) = 1;
    }
    f.maps.push_back(m);
  }
  const FunctorReport report = validate_functor(c, f);
  if (!report.valid) throw ValidationError("corepresented functor failed validation");
  return f;
}

}  // namespace rooslab
