#pragma once

#include "rooslab/coherence.hpp"
#include "rooslab/linalg.hpp"
#include "rooslab/nerve.hpp"
#include "rooslab/system.hpp"
#include "rooslab/tree.hpp"

#include <string>

namespace rooslab {

/// "0", or "Z^r" and "Z/d" summands joined by " + ".
std::string render_invariants(const GroupInvariants& g);
/// Inverse of render_invariants; throws ParseError on anything else.
GroupInvariants parse_invariants(const std::string& text);

/// System document:
///   {"ring": "Z", "indices": [labels], "leq": [[a, b], ...],
///    "objects": {label: rank}, "maps": {"mu->lambda": rows}}
/// Throws ParseError with a line number for malformed input, including
/// shape errors (which name the bond), and ValidationError when the
/// result is not functorial.
InverseSystem parse_system_text(const std::string& text);
InverseSystem parse_system(const std::string& path);
/// Every bond between distinct related indices, so reading it back
/// reproduces the system bond-for-bond.
std::string write_system(const InverseSystem& s);

/// {"ring", "indices", "leq", "left", "middle", "right", "f", "g"}: the
/// three systems hold "objects" and "maps"; "f" and "g" map each label to
/// a matrix.
SystemSES parse_ses_text(const std::string& text);
SystemSES parse_ses(const std::string& path);

/// {"objects": [labels], "morphisms": [{"name", "source", "target"}],
///  "compose": [[g, f, "g o f"], ...]}. Identities are implicit and named
/// id_<object>; every composable pair of non-identities must be listed.
FiniteCategory parse_category_text(const std::string& text);
FiniteCategory parse_category(const std::string& path);

/// {"modulus": k, "members": [{"f": {"prefix": [...], "tail": t},
///   "default": v, "exceptions": [[i, j, v], ...]}]}
FamilySpec parse_family_text(const std::string& text);
FamilySpec parse_family(const std::string& path);

/// {"points": N, "psi": {"default": v, "exceptions": [[i, j, v]]},
///  "stages": [{"g": evc, "f": [evc, ...]}]}; points are materialized on
/// load.
TreeInstance parse_tree_text(const std::string& text);
TreeInstance parse_tree(const std::string& path);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace rooslab
