#pragma once

#include "rooslab/integer.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rooslab {

/// Finite quasi-order on labelled elements. The relation is stored as the
/// reflexive-transitive closure of the generating pairs; antisymmetry is not
/// required.
class QuasiOrder {
 public:
  QuasiOrder() = default;
  /// pairs (a, b) mean a <= b.
  QuasiOrder(std::vector<std::string> labels,
             const std::vector<std::pair<Index, Index>>& pairs);

  static QuasiOrder chain(Index m);
  static QuasiOrder antichain(Index m);

  Index size() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_[i]; }
  std::optional<Index> find(const std::string& label) const;

  bool leq(Index a, Index b) const { return leq_[a * size() + b] != 0; }
  bool equivalent(Index a, Index b) const { return leq(a, b) && leq(b, a); }

  /// All related pairs (a, b), a <= b, in lexicographic order.
  std::vector<std::pair<Index, Index>> relations() const;

  /// Induced suborder on a sorted, duplicate-free subset.
  QuasiOrder induced(const std::vector<Index>& subset) const;

  std::vector<Index> down_set(Index x) const;

  friend bool operator==(const QuasiOrder&, const QuasiOrder&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<char> leq_;
};

struct OrderReport {
  bool directed = false;
  bool has_max = false;
  bool partial = false;
};

OrderReport validate_order(const QuasiOrder& q);

/// Elements above everything (a maximum class; may have several members).
std::vector<Index> maximum_elements(const QuasiOrder& q);

using IndexTuple = std::vector<Index>;

/// Weakly increasing (n+1)-tuples, lexicographic by element index. With
/// `strict`, only tuples with no two consecutive equal entries.
std::vector<IndexTuple> chains(const QuasiOrder& q, Index n,
                               bool strict = false);

/// Tuple with entry i removed.
IndexTuple face(const IndexTuple& t, Index i);

bool is_degenerate(const IndexTuple& t);

bool is_cofinal(const QuasiOrder& q, const std::vector<Index>& subset);

struct MonotoneMap {
  QuasiOrder source;
  QuasiOrder target;
  std::vector<Index> assignment;

  bool is_monotone() const;
  /// Image cofinal in the target.
  bool is_cofinal() const;
  /// Throws ValidationError unless the map is well formed and monotone.
  void check() const;
};

/// Inclusion of the induced suborder on a subset.
MonotoneMap inclusion(const QuasiOrder& q, const std::vector<Index>& subset);

using JoinFunction = std::function<Index(Index, Index)>;

struct Filtration {
  std::vector<std::vector<Index>> stages;

  /// Throws ValidationError unless the stages are nested, join-closed,
  /// downward closed, and exhaust the order.
  void check(const QuasiOrder& q, const JoinFunction& join) const;
};

/// Stage k is the downward closure of the join-closure of the first k+1
/// enumerated elements.
Filtration build_filtration(const QuasiOrder& q, const JoinFunction& join,
                            const std::vector<Index>& enumeration);

}  // namespace rooslab
