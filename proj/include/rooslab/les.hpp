#pragma once

#include "rooslab/integer.hpp"
#include "rooslab/linalg.hpp"
#include "rooslab/system.hpp"

#include <string>
#include <vector>

namespace rooslab {

/// One group of the long exact sequence, seen over a field.
struct LesPosition {
  char system = 'L';  // 'L'eft, 'M'iddle, 'R'ight
  Index degree = 0;
  Index dimension = 0;
  Index rank_in = 0;
  Index rank_out = 0;
  bool composite_zero = true;
  bool exact = true;
};

struct LesField {
  std::string field;
  std::vector<LesPosition> positions;
  bool exact = true;
};

struct LesReport {
  std::vector<GroupInvariants> left;
  std::vector<GroupInvariants> middle;
  std::vector<GroupInvariants> right;
  std::vector<LesField> fields;
  bool all_exact = true;
  std::string note;
};

/// lim^n of the three systems for n <= n_max and exactness of
/// 0 -> lim^0 L -> lim^0 M -> lim^0 R -> lim^1 L -> ... -> lim^n_max R,
/// with induced maps and connecting maps obtained by lifting. Exactness is
/// checked by rank counts over Q and Z/2, Z/3, Z/5 (over Z/m: the primes
/// dividing m). Throws ValidationError if the sequence is not levelwise exact.
LesReport les_of_ses(const SystemSES& e, Index n_max);

}  // namespace rooslab
