#include "rooslab/errors.hpp"
#include "rooslab/io.hpp"
#include "rooslab/les.hpp"
#include "rooslab/nerve.hpp"
#include "rooslab/report.hpp"
#include "rooslab/roos.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

using namespace rooslab;

namespace {

std::uint64_t seed() {
  if (const char* s = std::getenv("ROOSLAB_SEED")) return std::stoull(s);
  return 20241014;
}

std::string degree_key(const std::string& name, Index n) { return name + "^" + std::to_string(n); }

void tuple_counts(Report& r, const RoosComplex& k) {
  for (Index n = 0; n <= k.max_degree(); ++n)
    r.stat("blocks K^" + std::to_string(n), static_cast<long long>(k.modules[n].blocks.size()));
}

bool complex_ok(const RoosComplex& k, std::string& detail) {
  try {
    check_differentials(k);
    return true;
  } catch (const CompositionError& e) {
    detail = e.what();
    return false;
  }
}

// Elements with nothing strictly above them.
std::vector<Index> maximal_elements(const QuasiOrder& q) {
  std::vector<Index> out;
  for (Index x = 0; x < q.size(); ++x) {
    bool top = true;
    for (Index y = 0; y < q.size() && top; ++y) top = !q.leq(x, y) || q.leq(y, x);
    if (top) out.push_back(x);
  }
  return out;
}

Report limit_command(const std::string& path, Index degree, bool strict) {
  const InverseSystem s = parse_system(path);
  Report r;
  r.command = "limit --system " + path + " --degree " + std::to_string(degree);
  ComplexOptions o;
  o.strict = strict;
  o.verify = false;
  const RoosComplex k = build_complex(s, degree + 1, o);
  tuple_counts(r, k);
  std::string detail;
  r.verdict("differentials compose to zero", complex_ok(k, detail), detail);
  for (Index n = 0; n <= degree; ++n) r.result(degree_key("lim", n), render_invariants(k.cohomology(n)));
  return r;
}

Report verify_command(const std::string& path, Index degree) {
  const InverseSystem s = parse_system(path);
  Report r;
  r.command = "verify --system " + path;
  const SystemReport sr = validate_system(s);
  std::string violations;
  for (const auto& v : sr.violations) violations += (violations.empty() ? "" : "; ") + v;
  r.verdict("functoriality", sr.valid, violations);
  r.result("surjective bonds", sr.surjective ? "yes" : "no");
  if (!sr.valid) return r;

  ComplexOptions o;
  o.verify = false;
  const RoosComplex k = build_complex(s, degree + 1, o);
  tuple_counts(r, k);
  std::string detail;
  const bool ok = complex_ok(k, detail);
  r.verdict("differentials compose to zero", ok, detail);
  if (!ok) return r;
  std::vector<GroupInvariants> lim;
  for (Index n = 0; n <= degree; ++n) {
    lim.push_back(k.cohomology(n));
    r.result(degree_key("lim", n), render_invariants(lim.back()));
  }
  const GroupInvariants direct = limit_direct(s);
  r.verdict("degree 0 equals the equalizer", direct == lim[0],
            "equalizer " + render_invariants(direct));

  if (!validate_order(s.index()).directed) {
    r.notes.push_back("cofinal spot-checks skipped: the order is not directed");
    return r;
  }
  std::mt19937_64 rng(seed());
  std::vector<std::vector<Index>> subsets{maximal_elements(s.index())};
  for (int t = 0; t < 3; ++t) {
    std::vector<Index> c = subsets.front();
    for (Index x = 0; x < s.size(); ++x)
      if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) c.push_back(x);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    subsets.push_back(c);
  }
  for (const auto& c : subsets) {
    std::string name = "{";
    for (std::size_t i = 0; i < c.size(); ++i) name += (i ? "," : "") + s.index().label(c[i]);
    name += "}";
    if (!is_cofinal(s.index(), c)) {
      r.verdict("cofinal subset " + name, false, "not cofinal");
      continue;
    }
    const auto restricted = derived_limits(restrict(s, c), degree);
    std::string mismatch;
    for (Index n = 0; n <= degree; ++n)
      if (!(restricted[n] == lim[n]))
        mismatch += degree_key("lim", n) + " = " + render_invariants(restricted[n]) + " ";
    r.verdict("same limits on cofinal " + name, mismatch.empty(), mismatch);
  }
  return r;
}

Report les_command(const std::string& path, Index degree) {
  const SystemSES e = parse_ses(path);
  Report r;
  r.command = "les --ses " + path + " --max-degree " + std::to_string(degree);
  const LesReport les = les_of_ses(e, degree);
  for (Index n = 0; n <= degree; ++n) {
    r.result(degree_key("lim", n) + " left", render_invariants(les.left[n]));
    r.result(degree_key("lim", n) + " middle", render_invariants(les.middle[n]));
    r.result(degree_key("lim", n) + " right", render_invariants(les.right[n]));
  }
  for (const auto& f : les.fields) {
    std::string bad;
    for (const auto& p : f.positions)
      if (!p.exact) bad += std::string(1, p.system) + std::to_string(p.degree) + " ";
    r.verdict("exact over " + f.field, f.exact, bad.empty() ? "" : "fails at " + bad);
  }
  r.notes.push_back(les.note);
  return r;
}

Report nerve_command(const std::string& path, const std::string& object, Index rank, Index degree) {
  const FiniteCategory c = parse_category(path);
  Index i = -1;
  for (Index o = 0; o < c.object_count(); ++o)
    if (c.objects()[o] == object) i = o;
  if (i < 0) throw ValidationError("unknown object \"" + object + "\"");
  Report r;
  r.command = "nerve --category " + path + " --object " + object + " --rank " + std::to_string(rank);
  const RoosComplex k = nerve_complex(c, corepresented_system(c, i, rank), degree + 1);
  r.stat("morphisms", c.morphism_count());
  tuple_counts(r, k);
  bool acyclic = true;
  for (Index n = 0; n <= degree; ++n) {
    const GroupInvariants h = k.cohomology(n);
    r.result(degree_key("H", n), render_invariants(h));
    acyclic = acyclic && (n == 0 ? h == GroupInvariants{static_cast<std::size_t>(rank), {}}
                                 : h.is_trivial());
  }
  r.verdict("rank " + std::to_string(rank) + " in degree 0 and zero above", acyclic);
  return r;
}

std::optional<std::size_t> read_budget(const std::string& b) {
  if (b == "finite") return std::nullopt;
  return static_cast<std::size_t>(std::stoul(b));
}

std::string point(const GridPoint& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string points(const std::vector<GridPoint>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? " " : "") + point(ps[i]);
  return s + "}";
}

template <class Table>
std::string table(const Table& t) {
  std::string s = "{";
  bool first = true;
  for (const auto& [p, v] : t) {
    s += (first ? "" : " ") + point(p) + "->" + std::to_string(v);
    first = false;
  }
  return s + "}";
}

Report cohere_command(const std::string& mode, const std::string& path, const std::string& budget,
                      long horizon) {
  const FamilySpec fam = parse_family(path);
  Report r;
  r.command = "cohere " + mode + " --family " + path + " --budget " + budget;
  r.stat("members", static_cast<long long>(fam.members.size()));
  if (mode == "check") {
    const CoherenceReport c = coherence_check(fam, read_budget(budget));
    for (const auto& p : c.pairs) {
      const std::string name = "pair " + std::to_string(p.first) + "," + std::to_string(p.second);
      r.result(name, p.infinite ? "infinite disagreement on " + p.witness : points(p.points));
      r.verdict(name + " within budget", p.passes);
    }
    return r;
  }
  r.command += " --horizon " + std::to_string(horizon);
  const auto b = read_budget(budget);
  if (!b) throw ValidationError("trivialize needs a numeric budget");
  const TrivializeResult t = trivialize(fam, *b, horizon);
  r.stat("cells", static_cast<long long>(t.cells));
  r.result("search space", to_string(t.search_space));
  if (t.psi) {
    r.result("psi", "default 0, ones at " + table(t.psi->exceptions));
  } else {
    r.result("psi", "none");
    r.notes.push_back("no function on the union grid meets the budget; all " +
                      to_string(t.search_space) + " candidates are excluded");
  }
  return r;
}

Report tree_command(const std::string& mode, const std::string& path, Index depth,
                    const std::vector<GridPoint>& probe) {
  const TreeInstance t = parse_tree(path);
  if (depth > t.length()) throw ValidationError("depth exceeds the number of stages");
  Report r;
  r.command = "tree " + mode + " --instance " + path + " --depth " + std::to_string(depth);
  r.stat("points", t.points);
  r.stat("stages", t.length());
  const TreeValidation v = validate(t);
  std::string bad;
  for (const auto& m : v.violations) bad += (bad.empty() ? "" : "; ") + m;
  r.verdict("instance invariants", v.valid, bad);
  if (!v.valid) return r;
  const auto branches = basecase_tree(t, depth);
  auto word = [](const std::vector<int>& h) {
    std::string s;
    for (int b : h) s += static_cast<char>('0' + b);
    return s.empty() ? std::string("()") : s;
  };
  if (mode == "build") {
    for (Index a = 0; a < t.length(); ++a) r.result("X_" + std::to_string(a), points(t.stages[a].x));
    for (const auto& b : branches)
      r.result("psi^" + word(b.h), "default " + std::to_string(b.psi.default_value) +
                                       ", exceptions " + table(b.psi.exceptions));
    return r;
  }
  for (std::size_t a = 0; a < branches.size(); ++a)
    for (std::size_t b = a + 1; b < branches.size(); ++b) {
      const SeparationCertificate c = branch_separation(t, branches[a].h, branches[b].h, probe);
      bool genuine = true;
      for (const auto& p : c.points)
        genuine = genuine && branches[a].psi.value(p) != branches[b].psi.value(p);
      const std::string name = word(branches[a].h) + " vs " + word(branches[b].h);
      r.result(name, std::to_string(c.points.size()) + " points at stage " +
                         std::to_string(c.gamma) + ", bound " + std::to_string(c.guaranteed));
      r.verdict(name, c.holds && genuine);
    }
  return r;
}

std::vector<GridPoint> parse_points(const std::string& s) {
  std::vector<GridPoint> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw ValidationError("probe points read \"i,j;i,j\"");
    out.emplace_back(std::stol(item.substr(0, comma)), std::stol(item.substr(comma + 1)));
  }
  return out;
}

std::string make_a(const std::string& functions, const std::string& ring) {
  TruncationSpec spec;
  spec.ring = Ring::parse(ring);
  std::stringstream ss(functions);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<long> f;
    std::stringstream is(item);
    std::string v;
    while (std::getline(is, v, ',')) f.push_back(std::stol(v));
    spec.family.push_back(f);
  }
  if (spec.family.empty()) throw ValidationError("no functions given");
  spec.columns = static_cast<Index>(spec.family.front().size());
  return write_system(truncated_A(spec).system);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived limits of inverse systems and coherence experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "machine-readable report");

  std::string system, ses, category, family, instance, object, budget = "0", probe;
  std::string functions, ring = "Z";
  Index degree = 3, rank = 1, depth = 0;
  long horizon = 16;
  bool strict = false;

  auto* limit = app.add_subcommand("limit", "derived limits lim^0..lim^N");
  limit->add_option("--system", system, "system document")->required();
  limit->add_option("--degree", degree, "top degree")->capture_default_str();
  limit->add_flag("--strict", strict, "non-degenerate tuples only");

  auto* verify = app.add_subcommand("verify", "functoriality, complex and cross-checks");
  verify->add_option("--system", system, "system document")->required();
  verify->add_option("--degree", degree, "top degree")->capture_default_str();

  auto* les = app.add_subcommand("les", "long exact sequence of a short exact sequence");
  les->add_option("--ses", ses, "sequence document")->required();
  les->add_option("--max-degree", degree, "top degree")->capture_default_str();

  auto* nerve = app.add_subcommand("nerve", "nerve cohomology of a corepresented functor");
  nerve->add_option("--category", category, "category document")->required();
  nerve->add_option("--object", object, "object i")->required();
  nerve->add_option("--rank", rank, "rank a")->capture_default_str();
  nerve->add_option("--degree", degree, "top degree")->capture_default_str();

  auto* cohere = app.add_subcommand("cohere", "coherence of grid families");
  cohere->require_subcommand(1);
  for (const char* mode : {"check", "trivialize"}) {
    auto* sub = cohere->add_subcommand(mode, mode);
    sub->add_option("--family", family, "family document")->required();
    sub->add_option("--budget", budget, "disagreements allowed, or 'finite'")->capture_default_str();
    sub->add_option("--horizon", horizon, "grid bound")->capture_default_str();
  }

  auto* tree = app.add_subcommand("tree", "base-case tree construction");
  tree->require_subcommand(1);
  for (const char* mode : {"build", "separate"}) {
    auto* sub = tree->add_subcommand(mode, mode);
    sub->add_option("--instance", instance, "tree instance document")->required();
    sub->add_option("--depth", depth, "branch depth")->capture_default_str();
    sub->add_option("--probe", probe, "excluded points \"i,j;i,j\"");
  }

  auto* make = app.add_subcommand("make-a", "system document for a truncated family");
  make->add_option("--functions", functions, "functions like \"2,1;1,2\"")->required();
  make->add_option("--ring", ring, "Z or Z/m")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (make->parsed()) {
      std::cout << make_a(functions, ring);
      return 0;
    }
    Report r;
    if (limit->parsed()) r = limit_command(system, degree, strict);
    if (verify->parsed()) r = verify_command(system, degree);
    if (les->parsed()) r = les_command(ses, degree);
    if (nerve->parsed()) r = nerve_command(category, object, rank, degree);
    for (const char* mode : {"check", "trivialize"})
      if (cohere->get_subcommand(mode)->parsed()) r = cohere_command(mode, family, budget, horizon);
    for (const char* mode : {"build", "separate"})
      if (tree->get_subcommand(mode)->parsed())
        r = tree_command(mode, instance, depth, probe.empty() ? std::vector<GridPoint>{} : parse_points(probe));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (json ? r.json() : r.text());
    return r.exit_status();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
