#include "rooslab/io.hpp"

#include "rooslab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace rooslab {

using nlohmann::json;
using nlohmann::ordered_json;

std::string render_invariants(const GroupInvariants& g) {
  if (g.is_trivial()) return "0";
  std::string out;
  if (g.free_rank > 0) out = "Z^" + std::to_string(g.free_rank);
  for (const auto& d : g.torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + to_string(d);
  }
  return out;
}

GroupInvariants parse_invariants(const std::string& text) {
  if (text == "0") return {};
  GroupInvariants g;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    std::size_t end = text.find(" + ", pos);
    if (end == std::string::npos) end = text.size();
    const std::string term = text.substr(pos, end - pos);
    if (term.size() > 2 && term.compare(0, 2, "Z^") == 0 && first) {
      const std::string r = term.substr(2);
      if (r.find_first_not_of("0123456789") != std::string::npos || r[0] == '0')
        throw ParseError(0, "bad free summand '" + term + "'");
      g.free_rank = std::stoul(r);
    } else if (term.size() > 2 && term.compare(0, 2, "Z/") == 0) {
      const std::string d = term.substr(2);
      if (d.find_first_not_of("0123456789") != std::string::npos || d[0] == '0')
        throw ParseError(0, "bad torsion summand '" + term + "'");
      g.torsion.emplace_back(d);
    } else {
      throw ParseError(0, "cannot read summand '" + term + "'");
    }
    first = false;
    pos = end + 3;
  }
  try {
    g.check_canonical();
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::size_t line_at(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

// Parsed document plus its source text, for locating errors.
class Document {
 public:
  explicit Document(const std::string& text) : text_(text) {
    try {
      root_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!root_.is_object()) throw ParseError(1, "document must be a JSON object");
  }

  const json& root() const { return root_; }

  /// Line of the first occurrence of "key", or 0.
  std::size_t line_of(const std::string& key) const {
    const std::size_t p = text_.find("\"" + key + "\"");
    return p == std::string::npos ? 0 : line_at(text_, p);
  }

  [[noreturn]] void fail(const std::string& key, const std::string& reason) const {
    throw ParseError(line_of(key), reason);
  }

  const json& member(const json& obj, const std::string& key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(key, "missing key \"" + key + "\"");
    return obj.at(key);
  }

  std::string string(const json& v, const std::string& key) const {
    if (!v.is_string()) fail(key, "\"" + key + "\" must be a string");
    return v.get<std::string>();
  }

  long integer(const json& v, const std::string& key) const {
    if (!v.is_number_integer()) fail(key, "\"" + key + "\" must be an integer");
    return v.get<long>();
  }

  Integer big(const json& v, const std::string& key) const {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned()) return Integer(v.get<unsigned long long>());
      return Integer(v.get<long long>());
    }
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
      if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos)
        return Integer(s);
    }
    fail(key, "matrix entry under \"" + key + "\" is not an integer");
  }

  IntMatrix matrix(const json& v, const std::string& key, Index rows, Index cols) const {
    if (!v.is_array()) fail(key, "\"" + key + "\" must be a list of rows");
    if (static_cast<Index>(v.size()) != rows)
      fail(key, "bond " + key + " has " + std::to_string(v.size()) + " rows, expected " +
                    std::to_string(rows));
    IntMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      const json& row = v[r];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols)
        fail(key, "bond " + key + " row " + std::to_string(r) + " must have " +
                      std::to_string(cols) + " entries");
      for (Index c = 0; c < cols; ++c) m(r, c) = big(row[c], key);
    }
    return m;
  }

 private:
  const std::string& text_;
  json root_;
};

struct Header {
  Ring ring;
  QuasiOrder order;
};

Header read_header(const Document& d) {
  const json& root = d.root();
  Header h;
  try {
    h.ring = Ring::parse(d.string(d.member(root, "ring"), "ring"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    d.fail("ring", e.what());
  }
  const json& indices = d.member(root, "indices");
  if (!indices.is_array() || indices.empty()) d.fail("indices", "\"indices\" must be a nonempty list");
  std::vector<std::string> labels;
  for (const auto& l : indices) labels.push_back(d.string(l, "indices"));
  std::map<std::string, Index> at;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!at.emplace(labels[i], static_cast<Index>(i)).second)
      d.fail(labels[i], "index label \"" + labels[i] + "\" repeats");
  std::vector<std::pair<Index, Index>> pairs;
  const json& leq = root.contains("leq") ? root.at("leq") : json::array();
  if (!leq.is_array()) d.fail("leq", "\"leq\" must be a list of pairs");
  for (const auto& p : leq) {
    if (!p.is_array() || p.size() != 2) d.fail("leq", "each \"leq\" entry must be a pair");
    const std::string a = d.string(p[0], "leq"), b = d.string(p[1], "leq");
    for (const auto& l : {a, b})
      if (!at.count(l)) d.fail("leq", "unknown index \"" + l + "\" in \"leq\"");
    pairs.emplace_back(at[a], at[b]);
  }
  h.order = QuasiOrder(labels, pairs);
  return h;
}

Index index_of(const Document& d, const QuasiOrder& q, const std::string& label,
               const std::string& key) {
  const auto i = q.find(label);
  if (!i) d.fail(key, "unknown index \"" + label + "\"");
  return *i;
}

InverseSystem read_system_body(const Document& d, const Header& h, const json& body) {
  const QuasiOrder& q = h.order;
  const json& objects = d.member(body, "objects");
  if (!objects.is_object()) d.fail("objects", "\"objects\" must map labels to ranks");
  std::vector<Index> ranks(static_cast<std::size_t>(q.size()), -1);
  for (const auto& [label, rank] : objects.items()) {
    const Index i = index_of(d, q, label, label);
    const long r = d.integer(rank, label);
    if (r < 0) d.fail(label, "rank of \"" + label + "\" is negative");
    ranks[i] = r;
  }
  for (Index i = 0; i < q.size(); ++i)
    if (ranks[i] < 0) d.fail("objects", "no rank for \"" + q.label(i) + "\"");
  BondTable bonds;
  const json& maps = body.contains("maps") ? body.at("maps") : json::object();
  if (!maps.is_object()) d.fail("maps", "\"maps\" must be an object");
  for (const auto& [key, value] : maps.items()) {
    const std::size_t arrow = key.find("->");
    if (arrow == std::string::npos) d.fail(key, "map key \"" + key + "\" must read \"mu->lambda\"");
    const Index mu = index_of(d, q, key.substr(0, arrow), key);
    const Index lambda = index_of(d, q, key.substr(arrow + 2), key);
    if (!q.leq(lambda, mu))
      d.fail(key, "bond " + key + " needs " + q.label(lambda) + " <= " + q.label(mu));
    bonds[{lambda, mu}] = h.ring.reduce(d.matrix(value, key, ranks[lambda], ranks[mu]));
  }
  try {
    InverseSystem s(q, h.ring, ranks, bonds);
    require_valid(s);
    return s;
  } catch (const DimensionError& e) {
    throw ParseError(d.line_of("maps"), e.what());
  }
}

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      const Integer& x = m(r, c);
      if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        row.push_back(x.convert_to<long long>());
      else
        row.push_back(to_string(x));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

EvcFun read_evc(const Document& d, const json& v, const std::string& key) {
  if (!v.is_object()) d.fail(key, "\"" + key + "\" must be {\"prefix\": [...], \"tail\": t}");
  std::vector<long> prefix;
  for (const auto& x : d.member(v, "prefix")) prefix.push_back(d.integer(x, "prefix"));
  try {
    return EvcFun::make(prefix, d.integer(d.member(v, "tail"), "tail"));
  } catch (const ValidationError& e) {
    d.fail(key, e.what());
  }
}

std::map<GridPoint, int> read_exceptions(const Document& d, const json& v) {
  std::map<GridPoint, int> out;
  if (!v.is_array()) d.fail("exceptions", "\"exceptions\" must be a list of [i, j, value]");
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 3) d.fail("exceptions", "exception entries are [i, j, value]");
    const GridPoint p{d.integer(e[0], "exceptions"), d.integer(e[1], "exceptions")};
    if (!out.emplace(p, static_cast<int>(d.integer(e[2], "exceptions"))).second)
      d.fail("exceptions", "repeated exception point");
  }
  return out;
}

}  // namespace

InverseSystem parse_system_text(const std::string& text) {
  const Document d(text);
  const Header h = read_header(d);
  return read_system_body(d, h, d.root());
}

InverseSystem parse_system(const std::string& path) { return parse_system_text(read_file(path)); }

std::string write_system(const InverseSystem& s) {
  const QuasiOrder& q = s.index();
  ordered_json out;
  out["ring"] = s.ring().tag();
  out["indices"] = q.labels();
  ordered_json leq = ordered_json::array();
  ordered_json maps = ordered_json::object();
  for (const auto& [l, m] : q.relations()) {
    if (l == m) continue;
    leq.push_back({q.label(l), q.label(m)});
    maps[q.label(m) + "->" + q.label(l)] = matrix_json(s.bond(l, m));
  }
  out["leq"] = leq;
  ordered_json objects = ordered_json::object();
  for (Index i = 0; i < q.size(); ++i) objects[q.label(i)] = s.rank(i);
  out["objects"] = objects;
  out["maps"] = maps;
  return out.dump(2) + "\n";
}

SystemSES parse_ses_text(const std::string& text) {
  const Document d(text);
  const Header h = read_header(d);
  SystemSES e;
  e.left = read_system_body(d, h, d.member(d.root(), "left"));
  e.middle = read_system_body(d, h, d.member(d.root(), "middle"));
  e.right = read_system_body(d, h, d.member(d.root(), "right"));
  const QuasiOrder& q = h.order;
  auto read_maps = [&](const std::string& key, const InverseSystem& to, const InverseSystem& from) {
    const json& v = d.member(d.root(), key);
    if (!v.is_object()) d.fail(key, "\"" + key + "\" must map labels to matrices");
    std::vector<IntMatrix> out(static_cast<std::size_t>(q.size()));
    std::vector<char> seen(static_cast<std::size_t>(q.size()), 0);
    for (const auto& [label, m] : v.items()) {
      const Index i = index_of(d, q, label, key);
      out[i] = h.ring.reduce(d.matrix(m, key + " at " + label, to.rank(i), from.rank(i)));
      seen[i] = 1;
    }
    for (Index i = 0; i < q.size(); ++i)
      if (!seen[i]) d.fail(key, "\"" + key + "\" has no matrix at \"" + q.label(i) + "\"");
    return out;
  };
  e.f = read_maps("f", e.middle, e.left);
  e.g = read_maps("g", e.right, e.middle);
  return e;
}

SystemSES parse_ses(const std::string& path) { return parse_ses_text(read_file(path)); }

FiniteCategory parse_category_text(const std::string& text) {
  const Document d(text);
  const json& root = d.root();
  std::vector<std::string> objects;
  std::map<std::string, Index> object_at;
  for (const auto& o : d.member(root, "objects")) {
    objects.push_back(d.string(o, "objects"));
    if (!object_at.emplace(objects.back(), static_cast<Index>(objects.size()) - 1).second)
      d.fail("objects", "object \"" + objects.back() + "\" repeats");
  }
  std::vector<Morphism> morphisms;
  std::vector<Index> identities;
  std::map<std::string, Index> named;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    const Index i = static_cast<Index>(o);
    morphisms.push_back(Morphism{i, i, "id_" + objects[o]});
    identities.push_back(i);
    named[morphisms.back().label] = i;
  }
  const json& ms = root.contains("morphisms") ? root.at("morphisms") : json::array();
  for (const auto& m : ms) {
    const std::string name = d.string(d.member(m, "name"), "name");
    const std::string src = d.string(d.member(m, "source"), "source");
    const std::string tgt = d.string(d.member(m, "target"), "target");
    if (!object_at.count(src) || !object_at.count(tgt))
      d.fail(name, "morphism \"" + name + "\" has an unknown endpoint");
    if (!named.emplace(name, static_cast<Index>(morphisms.size())).second)
      d.fail(name, "morphism name \"" + name + "\" repeats");
    morphisms.push_back(Morphism{object_at[src], object_at[tgt], name});
  }
  const std::size_t n = morphisms.size();
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n, -1));
  const json& comp = root.contains("compose") ? root.at("compose") : json::array();
  for (const auto& c : comp) {
    if (!c.is_array() || c.size() != 3) d.fail("compose", "compose entries are [g, f, g o f]");
    Index ids[3];
    for (int k = 0; k < 3; ++k) {
      const std::string name = d.string(c[k], "compose");
      if (!named.count(name)) d.fail("compose", "unknown morphism \"" + name + "\"");
      ids[k] = named[name];
    }
    if (morphisms[ids[1]].target != morphisms[ids[0]].source)
      d.fail("compose", morphisms[ids[0]].label + " o " + morphisms[ids[1]].label +
                            " is not composable");
    table[ids[0]][ids[1]] = ids[2];
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (morphisms[f].target != morphisms[g].source) continue;
      if (static_cast<Index>(g) == identities[morphisms[g].source]) {
        table[g][f] = static_cast<Index>(f);
      } else if (static_cast<Index>(f) == identities[morphisms[f].source]) {
        table[g][f] = static_cast<Index>(g);
      } else if (table[g][f] < 0) {
        d.fail("compose", "missing composite " + morphisms[g].label + " o " + morphisms[f].label);
      }
    }
  return FiniteCategory(objects, morphisms, identities, table);
}

FiniteCategory parse_category(const std::string& path) {
  return parse_category_text(read_file(path));
}

FamilySpec parse_family_text(const std::string& text) {
  const Document d(text);
  FamilySpec fam;
  fam.modulus = static_cast<int>(d.root().contains("modulus") ? d.integer(d.root().at("modulus"), "modulus") : 2);
  if (fam.modulus < 2) d.fail("modulus", "modulus must be at least 2");
  for (const auto& m : d.member(d.root(), "members")) {
    const EvcFun f = read_evc(d, d.member(m, "f"), "f");
    const long def = m.contains("default") ? d.integer(m.at("default"), "default") : 0;
    const auto ex = m.contains("exceptions") ? read_exceptions(d, m.at("exceptions"))
                                             : std::map<GridPoint, int>{};
    try {
      fam.members.push_back({f, GridFun::make(f, static_cast<int>(def), ex, fam.modulus)});
    } catch (const ValidationError& e) {
      d.fail("exceptions", e.what());
    }
  }
  try {
    fam.check();
  } catch (const ValidationError& e) {
    d.fail("members", e.what());
  }
  return fam;
}

FamilySpec parse_family(const std::string& path) { return parse_family_text(read_file(path)); }

TreeInstance parse_tree_text(const std::string& text) {
  const Document d(text);
  TreeInstance t;
  t.points = d.integer(d.member(d.root(), "points"), "points");
  if (t.points < 1) d.fail("points", "\"points\" must be positive");
  if (d.root().contains("psi")) {
    const json& psi = d.root().at("psi");
    t.psi.default_value = static_cast<int>(d.integer(d.member(psi, "default"), "default")) & 1;
    const auto ex = psi.contains("exceptions") ? read_exceptions(d, psi.at("exceptions"))
                                               : std::map<GridPoint, int>{};
    for (const auto& [p, v] : ex)
      if ((v & 1) != t.psi.default_value) t.psi.exceptions[p] = v & 1;
  }
  for (const auto& s : d.member(d.root(), "stages")) {
    TreeStage stage;
    stage.g = read_evc(d, d.member(s, "g"), "g");
    for (const auto& f : d.member(s, "f")) stage.f.push_back(read_evc(d, f, "f"));
    if (static_cast<Index>(stage.f.size()) != t.points)
      d.fail("stages", "every stage needs " + std::to_string(t.points) + " functions f");
    t.stages.push_back(std::move(stage));
  }
  try {
    materialize(t);
  } catch (const ValidationError& e) {
    d.fail("stages", e.what());
  }
  return t;
}

TreeInstance parse_tree(const std::string& path) { return parse_tree_text(read_file(path)); }

}  // namespace rooslab
