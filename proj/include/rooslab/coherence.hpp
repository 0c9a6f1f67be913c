#pragma once

#include "rooslab/integer.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rooslab {

/// Eventually constant function omega -> N: prefix values, then `tail`
/// forever. Canonical: the prefix has no trailing entries equal to tail.
struct EvcFun {
  std::vector<long> prefix;
  long tail = 0;

  /// Canonicalizes; throws ValidationError on negative values.
  static EvcFun make(std::vector<long> prefix, long tail = 0);

  long operator()(long i) const {
    return i < static_cast<long>(prefix.size()) ? prefix[i] : tail;
  }
  long length() const { return static_cast<long>(prefix.size()); }
  long max_value() const;

  friend bool operator==(const EvcFun&, const EvcFun&) = default;
};

std::string to_string(const EvcFun& f);

struct EvcComparison {
  bool leq_star = false;
  bool eq_star = false;
  bool leq_everywhere = false;
};

EvcComparison evc_compare(const EvcFun& f, const EvcFun& g);
EvcFun evc_join(const EvcFun& f, const EvcFun& g);
EvcFun evc_meet(const EvcFun& f, const EvcFun& g);

/// Grid point (i, j).
using GridPoint = std::pair<long, long>;

/// (i, j) in I_f, i.e. j < f(i).
inline bool in_grid(const EvcFun& f, const GridPoint& p) {
  return p.first >= 0 && p.second >= 0 && p.second < f(p.first);
}

/// Points of I_f in lexicographic order; requires tail 0.
std::vector<GridPoint> grid_cells(const EvcFun& f);

/// Function on I_carrier into Z/k: a default value plus finitely many
/// exceptions.
struct GridFun {
  EvcFun carrier;
  int default_value = 0;
  std::map<GridPoint, int> exceptions;

  /// Reduces mod k, drops exceptions equal to the default, and throws
  /// ValidationError for exception points outside the carrier.
  static GridFun make(EvcFun carrier, int default_value,
                      std::map<GridPoint, int> exceptions, int modulus);

  int value(const GridPoint& p) const;

  friend bool operator==(const GridFun&, const GridFun&) = default;
};

struct FamilyMember {
  EvcFun f;
  GridFun phi;
};

struct FamilySpec {
  int modulus = 2;
  std::vector<FamilyMember> members;

  /// Throws ValidationError unless carriers match and are pairwise distinct.
  void check() const;
};

struct PairDisagreement {
  Index first = 0;
  Index second = 0;
  bool infinite = false;
  std::vector<GridPoint> points;  // exact set when finite
  std::string witness;            // region description when infinite
  bool passes = false;
};

struct CoherenceReport {
  bool coherent = true;
  std::optional<std::size_t> budget;  // nullopt: finitely many allowed
  std::vector<PairDisagreement> pairs;
};

/// Disagreements of every pair on I_f n I_g.
CoherenceReport coherence_check(const FamilySpec& family,
                                std::optional<std::size_t> budget);

struct TrivializeResult {
  std::optional<GridFun> psi;
  std::size_t cells = 0;   // size of the union grid
  Integer search_space;    // k^cells
};

/// Lexicographically least psi on the union grid with at most `budget`
/// disagreements against every member. Carriers must have tail 0, at most
/// `horizon` columns and values at most `horizon` (HorizonTooSmallError).
TrivializeResult trivialize(const FamilySpec& family, std::size_t budget, long horizon);

}  // namespace rooslab
