#pragma once

#include "rooslab/integer.hpp"

#include <string>
#include <string_view>

namespace rooslab {

/// Coefficient ring: the integers or Z/m with m >= 2.
class Ring {
 public:
  static Ring integers() { return Ring{}; }
  static Ring modular(const Integer& m);

  bool is_modular() const { return !is_zero(modulus_); }
  /// 0 for the integers.
  const Integer& modulus() const { return modulus_; }
  bool is_prime_field() const;

  Integer reduce(const Integer& x) const;
  IntMatrix reduce(const IntMatrix& m) const;
  IntVector reduce(const IntVector& v) const;

  bool is_zero_element(const Integer& x) const;
  bool is_zero_matrix(const IntMatrix& m) const;
  bool equal(const IntMatrix& a, const IntMatrix& b) const;

  /// "Z" or "Z/m".
  std::string tag() const;
  static Ring parse(std::string_view tag);

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.modulus_ == b.modulus_;
  }

 private:
  Integer modulus_{0};
};

}  // namespace rooslab
