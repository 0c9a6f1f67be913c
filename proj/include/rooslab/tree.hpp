#pragma once

#include "rooslab/coherence.hpp"

#include <map>
#include <string>
#include <vector>

namespace rooslab {

/// Z/2-valued function on the whole plane omega x omega: a default and a
/// finite table of exceptions.
struct PlaneFun {
  int default_value = 0;
  std::map<GridPoint, int> exceptions;

  int value(const GridPoint& p) const;
  void flip(const GridPoint& p);

  friend bool operator==(const PlaneFun&, const PlaneFun&) = default;
};

struct TreeStage {
  EvcFun g;
  std::vector<EvcFun> f;       // f_{alpha,0..N-1}, weakly increasing
  std::vector<GridPoint> x;    // materialized X_alpha
};

struct TreeInstance {
  Index points = 0;  // N
  std::vector<TreeStage> stages;
  PlaneFun psi;

  Index length() const { return static_cast<Index>(stages.size()); }
};

/// Fills every X_alpha by the pick rule: x_{alpha,n} is the
/// lexicographically least unused point of I_g \ I_{f_{alpha,n}}.
/// Throws ValidationError if some g_alpha <=* f_{alpha,n}.
void materialize(TreeInstance& t);

struct TreeValidation {
  bool valid = true;
  std::vector<std::string> violations;
};

TreeValidation validate(const TreeInstance& t);

struct Branch {
  std::vector<int> h;
  PlaneFun psi;
};

/// All 2^depth branches, h read as a binary word with h(0) first.
std::vector<Branch> basecase_tree(const TreeInstance& t, Index depth);

/// psi^h = psi + sum of the indicators of X_alpha with h(alpha) = 1.
PlaneFun branch_psi(const TreeInstance& t, const std::vector<int>& h);

struct SeparationCertificate {
  Index gamma = 0;
  std::vector<GridPoint> points;  // disagreements on X_gamma \ E
  long perturbation = 0;          // B
  long guaranteed = 0;            // N - B - |E|
  bool holds = false;
};

/// Throws EqualBranchError when h == h2, DimensionError on mismatched sizes.
SeparationCertificate branch_separation(const TreeInstance& t, const std::vector<int>& h,
                                        const std::vector<int>& h2,
                                        const std::vector<GridPoint>& probe);

}  // namespace rooslab
