#include "rooslab/order.hpp"

#include "rooslab/errors.hpp"

#include <algorithm>

namespace rooslab {

QuasiOrder::QuasiOrder(std::vector<std::string> labels,
                       const std::vector<std::pair<Index, Index>>& pairs)
    : labels_(std::move(labels)) {
  const Index n = size();
  leq_.assign(static_cast<std::size_t>(n * n), 0);
  for (Index i = 0; i < n; ++i) leq_[i * n + i] = 1;
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ValidationError("order pair refers to a missing element");
    leq_[a * n + b] = 1;
  }
  // Warshall
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (Index j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
}

QuasiOrder QuasiOrder::chain(Index m) {
  std::vector<std::string> labels;
  std::vector<std::pair<Index, Index>> pairs;
  for (Index i = 0; i < m; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) pairs.emplace_back(i - 1, i);
  }
  return QuasiOrder(labels, pairs);
}

QuasiOrder QuasiOrder::antichain(Index m) {
  std::vector<std::string> labels;
  for (Index i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  return QuasiOrder(labels, {});
}

std::optional<Index> QuasiOrder::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

std::vector<std::pair<Index, Index>> QuasiOrder::relations() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < size(); ++a)
    for (Index b = 0; b < size(); ++b)
      if (leq(a, b)) out.emplace_back(a, b);
  return out;
}

QuasiOrder QuasiOrder::induced(const std::vector<Index>& subset) const {
  std::vector<std::string> labels;
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    labels.push_back(labels_[subset[a]]);
    for (std::size_t b = 0; b < subset.size(); ++b)
      if (leq(subset[a], subset[b]))
        pairs.emplace_back(static_cast<Index>(a), static_cast<Index>(b));
  }
  return QuasiOrder(labels, pairs);
}

std::vector<Index> QuasiOrder::down_set(Index x) const {
  std::vector<Index> out;
  for (Index a = 0; a < size(); ++a)
    if (leq(a, x)) out.push_back(a);
  return out;
}

std::vector<Index> maximum_elements(const QuasiOrder& q) {
  std::vector<Index> out;
  for (Index m = 0; m < q.size(); ++m) {
    bool top = true;
    for (Index a = 0; a < q.size() && top; ++a) top = q.leq(a, m);
    if (top) out.push_back(m);
  }
  return out;
}

OrderReport validate_order(const QuasiOrder& q) {
  OrderReport r;
  r.has_max = !maximum_elements(q).empty();
  r.directed = true;
  for (Index a = 0; a < q.size() && r.directed; ++a)
    for (Index b = a + 1; b < q.size() && r.directed; ++b) {
      bool bound = false;
      for (Index c = 0; c < q.size() && !bound; ++c)
        bound = q.leq(a, c) && q.leq(b, c);
      r.directed = bound;
    }
  r.partial = true;
  for (Index a = 0; a < q.size(); ++a)
    for (Index b = a + 1; b < q.size(); ++b)
      if (q.equivalent(a, b)) r.partial = false;
  return r;
}

std::vector<IndexTuple> chains(const QuasiOrder& q, Index n, bool strict) {
  std::vector<IndexTuple> out;
  if (n < 0) return out;
  IndexTuple t;
  t.reserve(static_cast<std::size_t>(n + 1));
  std::function<void()> rec = [&] {
    if (static_cast<Index>(t.size()) == n + 1) {
      out.push_back(t);
      return;
    }
    for (Index x = 0; x < q.size(); ++x) {
      if (!t.empty()) {
        if (!q.leq(t.back(), x)) continue;
        if (strict && t.back() == x) continue;
      }
      t.push_back(x);
      rec();
      t.pop_back();
    }
  };
  rec();
  return out;
}

IndexTuple face(const IndexTuple& t, Index i) {
  IndexTuple out;
  out.reserve(t.size() - 1);
  for (Index k = 0; k < static_cast<Index>(t.size()); ++k)
    if (k != i) out.push_back(t[k]);
  return out;
}

bool is_degenerate(const IndexTuple& t) {
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t[k] == t[k - 1]) return true;
  return false;
}

bool is_cofinal(const QuasiOrder& q, const std::vector<Index>& subset) {
  for (Index a = 0; a < q.size(); ++a) {
    bool below = false;
    for (Index c : subset)
      if (q.leq(a, c)) {
        below = true;
        break;
      }
    if (!below) return false;
  }
  return true;
}

bool MonotoneMap::is_monotone() const {
  for (Index a = 0; a < source.size(); ++a)
    for (Index b = 0; b < source.size(); ++b)
      if (source.leq(a, b) && !target.leq(assignment[a], assignment[b]))
        return false;
  return true;
}

bool MonotoneMap::is_cofinal() const {
  return rooslab::is_cofinal(target, assignment);
}

void MonotoneMap::check() const {
  if (static_cast<Index>(assignment.size()) != source.size())
    throw ValidationError("monotone map: assignment size differs from source");
  for (Index x : assignment)
    if (x < 0 || x >= target.size())
      throw ValidationError("monotone map: image outside target");
  if (!is_monotone()) throw ValidationError("map is not order preserving");
}

MonotoneMap inclusion(const QuasiOrder& q, const std::vector<Index>& subset) {
  return MonotoneMap{q.induced(subset), q, subset};
}

namespace {

std::vector<Index> members(const std::vector<char>& in) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(static_cast<Index>(i));
  return out;
}

}  // namespace

void Filtration::check(const QuasiOrder& q, const JoinFunction& join) const {
  std::vector<char> previous(static_cast<std::size_t>(q.size()), 0);
  for (const auto& stage : stages) {
    std::vector<char> in(static_cast<std::size_t>(q.size()), 0);
    for (Index x : stage) in[x] = 1;
    for (Index x = 0; x < q.size(); ++x) {
      if (previous[x] && !in[x]) throw ValidationError("stages not nested");
      if (!in[x]) continue;
      for (Index y = 0; y < q.size(); ++y) {
        if (q.leq(y, x) && !in[y])
          throw ValidationError("stage not downward closed");
        if (in[y] && !in[join(x, y)])
          throw ValidationError("stage not join closed");
      }
    }
    previous = in;
  }
  for (Index x = 0; x < q.size(); ++x)
    if (!previous[x]) throw ValidationError("stages do not exhaust the order");
}

Filtration build_filtration(const QuasiOrder& q, const JoinFunction& join,
                            const std::vector<Index>& enumeration) {
  const Index n = q.size();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index j = join(x, y);
      if (j < 0 || j >= n || !q.leq(x, j) || !q.leq(y, j))
        throw JoinNotUpperBoundError("join(" + q.label(x) + ", " + q.label(y) +
                                     ") is not an upper bound");
    }
  for (Index x = 0; x < n; ++x)
    for (Index x2 = 0; x2 < n; ++x2) {
      if (!q.leq(x, x2)) continue;
      for (Index y = 0; y < n; ++y)
        if (!q.leq(join(x, y), join(x2, y)) || !q.leq(join(y, x), join(y, x2)))
          throw JoinNotMonotoneError("join is not monotone at " + q.label(x) +
                                     " <= " + q.label(x2));
    }
  for (Index x : enumeration)
    if (x < 0 || x >= n) throw ValidationError("enumeration outside the order");

  Filtration out;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Index e : enumeration) {
    in[e] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (Index x = 0; x < n; ++x) {
        if (!in[x]) continue;
        for (Index y = 0; y < n; ++y) {
          if (in[y] && !in[join(x, y)]) {
            in[join(x, y)] = 1;
            grew = true;
          }
        }
      }
    }
    for (Index x = 0; x < n; ++x)
      if (in[x])
        for (Index y = 0; y < n; ++y)
          if (q.leq(y, x)) in[y] = 1;
    out.stages.push_back(members(in));
  }
  if (static_cast<Index>(members(in).size()) != n)
    throw ValidationError("enumeration is not cofinal; stages miss elements");
  return out;
}

}  // namespace rooslab
