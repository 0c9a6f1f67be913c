#include "rooslab/coherence.hpp"

#include "rooslab/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rooslab {

EvcFun EvcFun::make(std::vector<long> prefix, long tail) {
  if (tail < 0) throw ValidationError("eventually constant function with negative tail");
  for (long v : prefix)
    if (v < 0) throw ValidationError("eventually constant function with negative value");
  while (!prefix.empty() && prefix.back() == tail) prefix.pop_back();
  return EvcFun{std::move(prefix), tail};
}

long EvcFun::max_value() const {
  long m = tail;
  for (long v : prefix) m = std::max(m, v);
  return m;
}

std::string to_string(const EvcFun& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.prefix.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(f.prefix[i]);
  }
  return s + "] tail " + std::to_string(f.tail);
}

EvcComparison evc_compare(const EvcFun& f, const EvcFun& g) {
  EvcComparison c;
  c.leq_star = f.tail <= g.tail;
  c.eq_star = f.tail == g.tail;
  c.leq_everywhere = c.leq_star;
  const long n = std::max(f.length(), g.length());
  for (long i = 0; i < n && c.leq_everywhere; ++i) c.leq_everywhere = f(i) <= g(i);
  return c;
}

namespace {

EvcFun pointwise(const EvcFun& f, const EvcFun& g, const std::function<long(long, long)>& op) {
  const long n = std::max(f.length(), g.length());
  std::vector<long> prefix;
  for (long i = 0; i < n; ++i) prefix.push_back(op(f(i), g(i)));
  return EvcFun::make(std::move(prefix), op(f.tail, g.tail));
}

}  // namespace

EvcFun evc_join(const EvcFun& f, const EvcFun& g) {
  return pointwise(f, g, [](long a, long b) { return std::max(a, b); });
}

EvcFun evc_meet(const EvcFun& f, const EvcFun& g) {
  return pointwise(f, g, [](long a, long b) { return std::min(a, b); });
}

std::vector<GridPoint> grid_cells(const EvcFun& f) {
  if (f.tail != 0) throw ValidationError("grid of " + to_string(f) + " is infinite");
  std::vector<GridPoint> out;
  for (long i = 0; i < f.length(); ++i)
    for (long j = 0; j < f(i); ++j) out.emplace_back(i, j);
  return out;
}

GridFun GridFun::make(EvcFun carrier, int default_value,
                      std::map<GridPoint, int> exceptions, int modulus) {
  if (modulus < 2) throw ValidationError("modulus must be at least 2");
  auto reduce = [&](int v) { return ((v % modulus) + modulus) % modulus; };
  GridFun out;
  out.default_value = reduce(default_value);
  for (const auto& [p, v] : exceptions) {
    if (!in_grid(carrier, p))
      throw ValidationError("exception point (" + std::to_string(p.first) + ", " +
                            std::to_string(p.second) + ") lies outside the carrier");
    const int r = reduce(v);
    if (r != out.default_value) out.exceptions[p] = r;
  }
  out.carrier = std::move(carrier);
  return out;
}

int GridFun::value(const GridPoint& p) const {
  auto it = exceptions.find(p);
  return it == exceptions.end() ? default_value : it->second;
}

void FamilySpec::check() const {
  if (modulus < 2) throw ValidationError("modulus must be at least 2");
  for (std::size_t a = 0; a < members.size(); ++a) {
    if (!(members[a].phi.carrier == members[a].f))
      throw ValidationError("member " + std::to_string(a) + " has a mismatched carrier");
    for (std::size_t b = 0; b < a; ++b)
      if (members[a].f == members[b].f)
        throw ValidationError("members " + std::to_string(b) + " and " + std::to_string(a) +
                              " share a carrier");
    for (const auto& [p, v] : members[a].phi.exceptions)
      if (!in_grid(members[a].f, p) || v < 0 || v >= modulus)
        throw ValidationError("member " + std::to_string(a) + " has a bad exception");
  }
}

namespace {

long last_exception_column(const GridFun& phi) {
  long c = -1;
  for (const auto& [p, v] : phi.exceptions) c = std::max(c, p.first);
  return c;
}

PairDisagreement compare_pair(const FamilySpec& family, Index a, Index b) {
  const GridFun& pa = family.members[a].phi;
  const GridFun& pb = family.members[b].phi;
  const EvcFun overlap = evc_meet(pa.carrier, pb.carrier);
  PairDisagreement d;
  d.first = a;
  d.second = b;
  if (overlap.tail > 0 && pa.default_value != pb.default_value) {
    d.infinite = true;
    const long start = std::max({pa.carrier.length(), pb.carrier.length(),
                                 last_exception_column(pa) + 1, last_exception_column(pb) + 1});
    d.witness = "{(i, j) : i >= " + std::to_string(start) + ", j < " +
                std::to_string(overlap.tail) + "}";
    return d;
  }
  std::vector<GridPoint> candidates;
  if (overlap.tail == 0) {
    candidates = grid_cells(overlap);
  } else {
    std::set<GridPoint> s;
    for (const auto& [p, v] : pa.exceptions) s.insert(p);
    for (const auto& [p, v] : pb.exceptions) s.insert(p);
    for (const auto& p : s)
      if (in_grid(overlap, p)) candidates.push_back(p);
  }
  for (const auto& p : candidates)
    if (pa.value(p) != pb.value(p)) d.points.push_back(p);
  return d;
}

}  // namespace

CoherenceReport coherence_check(const FamilySpec& family, std::optional<std::size_t> budget) {
  family.check();
  CoherenceReport r;
  r.budget = budget;
  const Index n = static_cast<Index>(family.members.size());
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      PairDisagreement d = compare_pair(family, a, b);
      d.passes = !d.infinite && (!budget || d.points.size() <= *budget);
      r.coherent = r.coherent && d.passes;
      r.pairs.push_back(std::move(d));
    }
  return r;
}

TrivializeResult trivialize(const FamilySpec& family, std::size_t budget, long horizon) {
  family.check();
  EvcFun all = EvcFun::make({}, 0);
  for (const auto& m : family.members) {
    if (m.f.tail != 0 || m.f.length() > horizon || m.f.max_value() > horizon)
      throw HorizonTooSmallError("carrier " + to_string(m.f) + " exceeds horizon " +
                                 std::to_string(horizon));
    all = evc_join(all, m.f);
  }
  const std::vector<GridPoint> cells = grid_cells(all);
  const int k = family.modulus;
  const std::size_t members = family.members.size();

  // Requirements per cell and, from each cell on, how many cells have
  // conflicting requirements (each costs at least one disagreement).
  std::vector<std::vector<std::pair<std::size_t, int>>> wants(cells.size());
  std::vector<std::size_t> conflicts_from(cells.size() + 1, 0);
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::size_t m = 0; m < members; ++m)
      if (in_grid(family.members[m].f, cells[c]))
        wants[c].emplace_back(m, family.members[m].phi.value(cells[c]));
  for (std::size_t c = cells.size(); c-- > 0;) {
    bool conflict = false;
    for (const auto& w : wants[c]) conflict = conflict || w.second != wants[c].front().second;
    conflicts_from[c] = conflicts_from[c + 1] + (conflict ? 1 : 0);
  }

  TrivializeResult r;
  r.cells = cells.size();
  r.search_space = 1;
  for (std::size_t c = 0; c < cells.size(); ++c) r.search_space *= k;

  std::vector<std::size_t> used(members, 0);
  std::size_t slack = budget * members;  // sum of remaining budgets
  std::vector<int> psi(cells.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t c) -> bool {
    if (conflicts_from[c] > slack) return false;
    if (c == cells.size()) return true;
    for (int v = 0; v < k; ++v) {
      bool ok = true;
      std::size_t spent = 0;
      for (const auto& [m, want] : wants[c]) {
        if (want == v) continue;
        if (used[m] == budget) ok = false;
      }
      if (!ok) continue;
      for (const auto& [m, want] : wants[c])
        if (want != v) {
          ++used[m];
          ++spent;
        }
      slack -= spent;
      psi[c] = v;
      if (rec(c + 1)) return true;
      slack += spent;
      for (const auto& [m, want] : wants[c])
        if (want != v) --used[m];
    }
    return false;
  };
  if (rec(0)) {
    std::map<GridPoint, int> ex;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (psi[c] != 0) ex[cells[c]] = psi[c];
    r.psi = GridFun::make(all, 0, ex, k);
  }
  return r;
}

}  // namespace rooslab
