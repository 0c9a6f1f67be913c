#include "rooslab/tree.hpp"

#include "rooslab/errors.hpp"

#include <algorithm>
#include <set>

namespace rooslab {

int PlaneFun::value(const GridPoint& p) const {
  auto it = exceptions.find(p);
  return it == exceptions.end() ? default_value : it->second;
}

void PlaneFun::flip(const GridPoint& p) {
  const int v = 1 - value(p);
  if (v == default_value)
    exceptions.erase(p);
  else
    exceptions[p] = v;
}

namespace {

std::string at(Index alpha, Index n) {
  return "(" + std::to_string(alpha) + ", " + std::to_string(n) + ")";
}

}  // namespace

void materialize(TreeInstance& t) {
  for (Index alpha = 0; alpha < t.length(); ++alpha) {
    TreeStage& s = t.stages[alpha];
    if (static_cast<Index>(s.f.size()) != t.points)
      throw ValidationError("stage " + std::to_string(alpha) + " needs N functions");
    s.x.clear();
    std::set<GridPoint> used;
    for (Index n = 0; n < t.points; ++n) {
      const EvcFun& f = s.f[n];
      if (evc_compare(s.g, f).leq_star)
        throw ValidationError("g <=* f at " + at(alpha, n));
      // Past both prefixes every column offers g.tail - f.tail new points.
      for (long i = 0;; ++i) {
        bool found = false;
        for (long j = f(i); j < s.g(i); ++j)
          if (!used.count({i, j})) {
            s.x.emplace_back(i, j);
            used.insert({i, j});
            found = true;
            break;
          }
        if (found) break;
      }
    }
  }
}

TreeValidation validate(const TreeInstance& t) {
  TreeValidation v;
  for (Index alpha = 0; alpha < t.length(); ++alpha) {
    const TreeStage& s = t.stages[alpha];
    if (static_cast<Index>(s.f.size()) != t.points ||
        static_cast<Index>(s.x.size()) != t.points) {
      v.violations.push_back("stage " + std::to_string(alpha) + " does not have N entries");
      continue;
    }
    std::set<GridPoint> seen;
    for (Index n = 0; n < t.points; ++n) {
      const EvcFun& f = s.f[n];
      const GridPoint& x = s.x[n];
      if (evc_compare(s.g, f).leq_star) v.violations.push_back("g <=* f at " + at(alpha, n));
      if (n > 0 && !evc_compare(s.f[n - 1], f).leq_everywhere)
        v.violations.push_back("f not increasing at " + at(alpha, n));
      if (!in_grid(s.g, x) || in_grid(f, x))
        v.violations.push_back("x outside I_g \\ I_f at " + at(alpha, n));
      if (!seen.insert(x).second) v.violations.push_back("repeated point at " + at(alpha, n));
      for (Index m = n; m < t.points; ++m)
        if (in_grid(f, s.x[m]))
          v.violations.push_back("prefix property fails at " + at(alpha, n) + " for point " +
                                 std::to_string(m));
    }
  }
  if (t.psi.default_value != 0 && t.psi.default_value != 1)
    v.violations.push_back("psi default is not in Z/2");
  v.valid = v.violations.empty();
  return v;
}

namespace {

void require_valid(const TreeInstance& t) {
  const TreeValidation v = validate(t);
  if (v.valid) return;
  std::string msg = "invalid tree instance:";
  for (const auto& s : v.violations) msg += "\n  " + s;
  throw ValidationError(msg);
}

}  // namespace

PlaneFun branch_psi(const TreeInstance& t, const std::vector<int>& h) {
  if (static_cast<Index>(h.size()) > t.length())
    throw DimensionError("branch longer than the instance");
  PlaneFun psi = t.psi;
  for (std::size_t alpha = 0; alpha < h.size(); ++alpha)
    if (h[alpha] == 1)
      for (const auto& x : t.stages[alpha].x) psi.flip(x);
  return psi;
}

std::vector<Branch> basecase_tree(const TreeInstance& t, Index depth) {
  if (depth < 0 || depth > t.length()) throw DimensionError("depth outside 0..L");
  require_valid(t);
  std::vector<Branch> out;
  const std::size_t count = std::size_t{1} << depth;
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<int> h(static_cast<std::size_t>(depth));
    for (Index a = 0; a < depth; ++a) h[a] = (code >> (depth - 1 - a)) & 1;
    out.push_back(Branch{h, branch_psi(t, h)});
  }
  return out;
}

SeparationCertificate branch_separation(const TreeInstance& t, const std::vector<int>& h,
                                        const std::vector<int>& h2,
                                        const std::vector<GridPoint>& probe) {
  if (h.size() != h2.size()) throw DimensionError("branches of different depth");
  require_valid(t);
  std::size_t gamma = 0;
  while (gamma < h.size() && h[gamma] == h2[gamma]) ++gamma;
  if (gamma == h.size()) throw EqualBranchError("branches are equal");

  SeparationCertificate c;
  c.gamma = static_cast<Index>(gamma);
  const TreeStage& sg = t.stages[gamma];
  for (std::size_t a = gamma + 1; a < h.size(); ++a) {
    if (h[a] == h2[a]) continue;
    for (const auto& x : t.stages[a].x)
      if (in_grid(sg.g, x)) ++c.perturbation;
  }
  const PlaneFun p1 = branch_psi(t, h);
  const PlaneFun p2 = branch_psi(t, h2);
  const std::set<GridPoint> excluded(probe.begin(), probe.end());
  for (const auto& x : sg.x)
    if (!excluded.count(x) && p1.value(x) != p2.value(x)) c.points.push_back(x);
  c.guaranteed = static_cast<long>(t.points) - c.perturbation - static_cast<long>(excluded.size());
  c.holds = static_cast<long>(c.points.size()) >= c.guaranteed;
  return c;
}

}  // namespace rooslab
