#include "rooslab/roos.hpp"

#include "rooslab/errors.hpp"

namespace rooslab {

void CochainModule::add(std::vector<Index> key, Index object, Index rank) {
  lookup_[key] = static_cast<Index>(blocks.size());
  blocks.push_back(Block{std::move(key), object, rank, total_rank});
  total_rank += rank;
}

Index CochainModule::find(const std::vector<Index>& key) const {
  auto it = lookup_.find(key);
  return it == lookup_.end() ? -1 : it->second;
}

GroupInvariants RoosComplex::cohomology(Index n) const {
  if (n < 0 || n >= max_degree())
    throw DimensionError("cohomology needs the next differential");
  return cohomology_at(delta[n], delta[n + 1], ring);
}

void check_differentials(const RoosComplex& k) {
  for (std::size_t n = 0; n + 1 < k.delta.size(); ++n)
    if (!k.ring.is_zero_matrix(multiply(k.delta[n + 1], k.delta[n])))
      throw CompositionError("delta^" + std::to_string(n + 1) + " * delta^" +
                             std::to_string(n) + " is not zero");
}

RoosComplex build_complex(const InverseSystem& s, Index n_max,
                          ComplexOptions options) {
  if (n_max < 0) throw DimensionError("negative degree");
  require_valid(s);
  RoosComplex k;
  k.ring = s.ring();
  k.strict = options.strict;
  for (Index n = 0; n <= n_max; ++n) {
    CochainModule mod;
    for (auto& t : chains(s.index(), n, options.strict)) {
      const Index first = t.front();
      mod.add(std::move(t), first, s.rank(first));
    }
    k.modules.push_back(std::move(mod));
  }
  k.delta.push_back(IntMatrix::Zero(k.modules[0].total_rank, 0));
  for (Index n = 1; n <= n_max; ++n) {
    const CochainModule& src = k.modules[n - 1];
    const CochainModule& dst = k.modules[n];
    IntMatrix d = IntMatrix::Zero(dst.total_rank, src.total_rank);
    for (const Block& b : dst.blocks) {
      const IndexTuple& t = b.key;
      // Face 0 carries the bond from the second entry down to the first.
      const Block& f0 = src.blocks[src.find(face(t, 0))];
      d.block(b.offset, f0.offset, b.rank, f0.rank) += s.bond(t[0], t[1]);
      for (Index i = 1; i <= n; ++i) {
        const Index pos = src.find(face(t, i));
        if (pos < 0) continue;  // degenerate face, strict variant only
        const Block& fi = src.blocks[pos];
        const Integer sign = (i % 2 == 0) ? 1 : -1;
        for (Index r = 0; r < b.rank; ++r) d(b.offset + r, fi.offset + r) += sign;
      }
    }
    k.delta.push_back(k.ring.reduce(d));
  }
  if (options.verify) check_differentials(k);
  return k;
}

std::vector<GroupInvariants> derived_limits(const InverseSystem& s, Index n_max,
                                            ComplexOptions options) {
  const RoosComplex k = build_complex(s, n_max + 1, options);
  std::vector<GroupInvariants> out;
  for (Index n = 0; n <= n_max; ++n) out.push_back(k.cohomology(n));
  return out;
}

GroupInvariants derived_limit(const InverseSystem& s, Index n,
                              ComplexOptions options) {
  if (n < 0) throw DimensionError("negative degree");
  return build_complex(s, n + 1, options).cohomology(n);
}

GroupInvariants limit_direct(const InverseSystem& s) {
  require_valid(s);
  const QuasiOrder& q = s.index();
  std::vector<Index> offset(static_cast<std::size_t>(s.size()) + 1, 0);
  for (Index l = 0; l < s.size(); ++l) offset[l + 1] = offset[l] + s.rank(l);
  Index rows = 0;
  for (const auto& [l, m] : q.relations())
    if (l != m) rows += s.rank(l);
  IntMatrix eq = IntMatrix::Zero(rows, offset.back());
  Index r = 0;
  for (const auto& [l, m] : q.relations()) {
    if (l == m) continue;
    eq.block(r, offset[m], s.rank(l), s.rank(m)) += s.bond(l, m);
    for (Index t = 0; t < s.rank(l); ++t) eq(r + t, offset[l] + t) -= 1;
    r += s.rank(l);
  }
  const SmithDecomposition snf = smith_normal_form(eq);
  const Ring& ring = s.ring();
  const Index n = eq.cols();
  if (!ring.is_modular())
    return GroupInvariants{static_cast<std::size_t>(n) - snf.rank, {}};
  // Over Z/m the j-th coordinate contributes Z/gcd(d_j, m).
  std::vector<Integer> orders;
  const std::vector<Integer> d = snf.diagonal();
  for (Index j = 0; j < n; ++j) {
    const Integer dj = j < static_cast<Index>(d.size()) ? d[j] : Integer(0);
    orders.push_back(gcd(dj, ring.modulus()));
  }
  return GroupInvariants::from_cyclic_orders(0, orders);
}

IntVector entry(const RoosComplex& k, const Cochain& u, const std::vector<Index>& key) {
  const CochainModule& mod = k.modules.at(u.degree);
  const Index pos = mod.find(key);
  if (pos < 0) throw DimensionError("no block with this key");
  const Block& b = mod.blocks[pos];
  return u.values.segment(b.offset, b.rank);
}

Cochain apply_delta(const RoosComplex& k, const Cochain& u) {
  if (u.degree + 1 > k.max_degree())
    throw DimensionError("complex not built far enough");
  if (u.values.size() != k.modules[u.degree].total_rank)
    throw DimensionError("cochain length does not match the module");
  return Cochain{u.degree + 1,
                 k.ring.reduce(IntVector(multiply(k.delta[u.degree + 1], u.values)))};
}

Cochain contract(const RoosComplex& k, const InverseSystem& s, const Cochain& u,
                 Index f) {
  if (u.degree < 1) throw DimensionError("contraction needs a cochain of degree >= 1");
  if (k.strict) throw ValidationError("contraction needs degenerate tuples");
  if (u.values.size() != k.modules.at(u.degree).total_rank)
    throw DimensionError("cochain length does not match the module");
  for (Index x = 0; x < s.size(); ++x)
    if (!s.index().leq(x, f))
      throw IndexNotDominatingError(s.index().label(x) + " is not below " +
                                    s.index().label(f));
  const CochainModule& target = k.modules[u.degree - 1];
  Cochain out{u.degree - 1, IntVector::Zero(target.total_rank)};
  for (const Block& b : target.blocks) {
    std::vector<Index> extended = b.key;
    extended.push_back(f);
    out.values.segment(b.offset, b.rank) = entry(k, u, extended);
  }
  return out;
}

}  // namespace rooslab
