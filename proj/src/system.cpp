#include "rooslab/system.hpp"

#include "rooslab/errors.hpp"
#include "rooslab/linalg.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace rooslab {

namespace {

std::string pair_name(const QuasiOrder& q, Index lambda, Index mu) {
  return q.label(mu) + "->" + q.label(lambda);
}

}  // namespace

InverseSystem::InverseSystem(QuasiOrder index, Ring ring,
                             std::vector<Index> ranks,
                             const BondTable& declared)
    : index_(std::move(index)), ring_(std::move(ring)), ranks_(std::move(ranks)) {
  const Index n = index_.size();
  if (static_cast<Index>(ranks_.size()) != n)
    throw ValidationError("rank list does not match the index size");
  for (Index r : ranks_)
    if (r < 0) throw ValidationError("negative rank");
  bonds_.assign(static_cast<std::size_t>(n * n), IntMatrix());
  std::vector<char> have(static_cast<std::size_t>(n * n), 0);

  // Declared edges grouped by their upper end: edges_into[mu] = lambdas.
  std::vector<std::vector<Index>> below(static_cast<std::size_t>(n));
  for (const auto& [key, m] : declared) {
    const auto [lambda, mu] = key;
    if (lambda < 0 || mu < 0 || lambda >= n || mu >= n)
      throw ValidationError("bond refers to a missing element");
    if (!index_.leq(lambda, mu))
      throw ValidationError("bond " + pair_name(index_, lambda, mu) +
                            " is not along the order");
    if (m.rows() != ranks_[lambda] || m.cols() != ranks_[mu])
      throw DimensionError("bond " + pair_name(index_, lambda, mu) +
                           " has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " +
                           std::to_string(ranks_[lambda]) + "x" +
                           std::to_string(ranks_[mu]));
    bonds_[lambda * n + mu] = ring_.reduce(m);
    have[lambda * n + mu] = 1;
    if (lambda != mu) below[mu].push_back(lambda);
  }

  for (Index mu = 0; mu < n; ++mu) {
    if (!have[mu * n + mu]) {
      bonds_[mu * n + mu] = IntMatrix::Identity(ranks_[mu], ranks_[mu]);
      have[mu * n + mu] = 1;
    }
    // Breadth-first composite from mu downwards along declared edges.
    std::vector<IntMatrix> path(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<Index> queue{mu};
    seen[mu] = 1;
    path[mu] = IntMatrix::Identity(ranks_[mu], ranks_[mu]);
    while (!queue.empty()) {
      const Index y = queue.front();
      queue.pop_front();
      std::vector<Index> next = below[y];
      std::sort(next.begin(), next.end());
      for (Index lambda : next) {
        if (seen[lambda]) continue;
        seen[lambda] = 1;
        path[lambda] = ring_.reduce(IntMatrix(multiply(bonds_[lambda * n + y], path[y])));
        queue.push_back(lambda);
      }
    }
    for (Index lambda = 0; lambda < n; ++lambda) {
      if (!index_.leq(lambda, mu) || have[lambda * n + mu]) continue;
      if (!seen[lambda])
        throw ValidationError("bond " + pair_name(index_, lambda, mu) +
                              " is not derivable from the declared bonds");
      bonds_[lambda * n + mu] = path[lambda];
      have[lambda * n + mu] = 1;
    }
  }
}

InverseSystem InverseSystem::constant(QuasiOrder index, Ring ring, Index rank) {
  const std::vector<Index> ranks(static_cast<std::size_t>(index.size()), rank);
  BondTable bonds;
  for (const auto& [a, b] : index.relations())
    bonds[{a, b}] = IntMatrix::Identity(rank, rank);
  return InverseSystem(std::move(index), std::move(ring), ranks, bonds);
}

const IntMatrix& InverseSystem::bond(Index lambda, Index mu) const {
  if (!index_.leq(lambda, mu))
    throw ValidationError("no bond between unrelated elements");
  return bonds_[lambda * size() + mu];
}

BondTable InverseSystem::all_bonds() const {
  BondTable out;
  for (const auto& [a, b] : index_.relations()) out[{a, b}] = bond(a, b);
  return out;
}

bool operator==(const InverseSystem& a, const InverseSystem& b) {
  if (!(a.index_ == b.index_) || !(a.ring_ == b.ring_) || a.ranks_ != b.ranks_)
    return false;
  for (const auto& [x, y] : a.index_.relations())
    if (a.bond(x, y) != b.bond(x, y)) return false;
  return true;
}

SystemReport validate_system(const InverseSystem& s) {
  SystemReport r;
  const QuasiOrder& q = s.index();
  const Ring& ring = s.ring();
  for (Index l = 0; l < s.size(); ++l)
    if (!ring.equal(s.bond(l, l), IntMatrix::Identity(s.rank(l), s.rank(l))))
      r.violations.push_back("bond " + pair_name(q, l, l) + " is not the identity");
  for (Index l = 0; l < s.size(); ++l)
    for (Index m = 0; m < s.size(); ++m) {
      if (!q.leq(l, m)) continue;
      for (Index v = 0; v < s.size(); ++v) {
        if (!q.leq(m, v)) continue;
        const IntMatrix composite = multiply(s.bond(l, m), s.bond(m, v));
        if (!ring.equal(composite, s.bond(l, v)))
          r.violations.push_back("functoriality fails for " + q.label(l) +
                                 " <= " + q.label(m) + " <= " + q.label(v));
      }
    }
  r.valid = r.violations.empty();
  for (const auto& [l, m] : q.relations()) {
    if (l == m) continue;
    if (!is_surjective(s.bond(l, m), ring)) r.non_surjective.emplace_back(l, m);
  }
  r.surjective = r.non_surjective.empty();
  return r;
}

void require_valid(const InverseSystem& s) {
  const SystemReport r = validate_system(s);
  if (r.valid) return;
  std::string msg = "invalid inverse system:";
  for (const auto& v : r.violations) msg += "\n  " + v;
  throw ValidationError(msg);
}

InverseSystem restrict(const InverseSystem& s, const std::vector<Index>& subset) {
  std::vector<Index> c = subset;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (Index x : c)
    if (x < 0 || x >= s.size()) throw ValidationError("subset outside the index");
  return pullback(s, inclusion(s.index(), c));
}

InverseSystem pullback(const InverseSystem& s, const MonotoneMap& phi) {
  if (!(phi.target == s.index()))
    throw ValidationError("pullback map does not land in the system's index");
  phi.check();
  const QuasiOrder& src = phi.source;
  std::vector<Index> ranks;
  for (Index m = 0; m < src.size(); ++m) ranks.push_back(s.rank(phi.assignment[m]));
  BondTable bonds;
  for (const auto& [a, b] : src.relations())
    bonds[{a, b}] = s.bond(phi.assignment[a], phi.assignment[b]);
  return InverseSystem(src, s.ring(), ranks, bonds);
}

TruncatedSystem truncated_A(const TruncationSpec& spec) {
  if (spec.family.empty()) throw ValidationError("truncation family is empty");
  for (const auto& f : spec.family) {
    if (static_cast<Index>(f.size()) != spec.columns)
      throw ValidationError("family function has the wrong number of columns");
    for (long v : f)
      if (v < 0) throw ValidationError("family function takes a negative value");
  }
  const Index n = static_cast<Index>(spec.family.size());
  auto dominated = [&](Index a, Index b) {
    for (Index i = 0; i < spec.columns; ++i)
      if (spec.family[a][i] > spec.family[b][i]) return false;
    return true;
  };
  std::vector<std::string> labels;
  std::vector<std::pair<Index, Index>> pairs;
  TruncatedSystem out;
  std::vector<Index> ranks;
  for (Index a = 0; a < n; ++a) {
    std::string label;
    std::vector<std::pair<long, long>> coords;
    for (Index i = 0; i < spec.columns; ++i) {
      if (i > 0) label += ",";
      label += std::to_string(spec.family[a][i]);
      for (long j = 0; j < spec.family[a][i]; ++j) coords.emplace_back(i, j);
    }
    labels.push_back(label);
    ranks.push_back(static_cast<Index>(coords.size()));
    out.coordinates.push_back(std::move(coords));
    for (Index b = 0; b < n; ++b)
      if (a != b && dominated(a, b)) pairs.emplace_back(a, b);
  }
  QuasiOrder q(labels, pairs);
  BondTable bonds;
  for (const auto& [a, b] : q.relations()) {
    IntMatrix m = IntMatrix::Zero(ranks[a], ranks[b]);
    const auto& ca = out.coordinates[a];
    const auto& cb = out.coordinates[b];
    for (std::size_t r = 0; r < ca.size(); ++r) {
      const auto it = std::lower_bound(cb.begin(), cb.end(), ca[r]);
      m(static_cast<Index>(r), static_cast<Index>(it - cb.begin())) = 1;
    }
    bonds[{a, b}] = m;
  }
  out.system = InverseSystem(q, spec.ring, ranks, bonds);
  out.note =
      "finite truncation: direct sum and product coincide, so this system "
      "serves as both A and B and the quotient B/A is zero";
  return out;
}

SesReport validate_ses(const SystemSES& e) {
  SesReport r;
  const InverseSystem* systems[] = {&e.left, &e.middle, &e.right};
  for (const InverseSystem* s : systems) {
    if (!(s->index() == e.left.index()) || !(s->ring() == e.left.ring())) {
      r.valid = false;
      r.violations.push_back("systems do not share index and ring");
      return r;
    }
  }
  const QuasiOrder& q = e.left.index();
  const Ring& ring = e.left.ring();
  const Index n = q.size();
  if (static_cast<Index>(e.f.size()) != n || static_cast<Index>(e.g.size()) != n) {
    r.valid = false;
    r.violations.push_back("system maps need one matrix per index");
    return r;
  }
  for (Index l = 0; l < n; ++l) {
    const std::string at = " at " + q.label(l);
    const IntMatrix& f = e.f[l];
    const IntMatrix& g = e.g[l];
    if (f.rows() != e.middle.rank(l) || f.cols() != e.left.rank(l) ||
        g.rows() != e.right.rank(l) || g.cols() != e.middle.rank(l)) {
      r.violations.push_back("map shape mismatch" + at);
      continue;
    }
    if (!ring.is_zero_matrix(multiply(g, f)))
      r.violations.push_back("second map after first is not zero" + at);
    else if (!cohomology_at(f, g, ring).is_trivial())
      r.violations.push_back("kernel differs from image" + at);
    if (!is_injective(f, ring)) r.violations.push_back("first map not injective" + at);
    if (!is_surjective(g, ring)) r.violations.push_back("second map not surjective" + at);
  }
  if (!r.violations.empty()) {
    r.valid = false;
    return r;
  }
  for (const auto& [l, m] : q.relations()) {
    if (l == m) continue;
    const std::string at = " on " + pair_name(q, l, m);
    if (!ring.equal(multiply(e.f[l], e.left.bond(l, m)),
                    multiply(e.middle.bond(l, m), e.f[m])))
      r.violations.push_back("first map does not commute with the bond" + at);
    if (!ring.equal(multiply(e.g[l], e.middle.bond(l, m)),
                    multiply(e.right.bond(l, m), e.g[m])))
      r.violations.push_back("second map does not commute with the bond" + at);
  }
  r.valid = r.violations.empty();
  return r;
}

}  // namespace rooslab
