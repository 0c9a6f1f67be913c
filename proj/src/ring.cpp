#include "rooslab/ring.hpp"

#include "rooslab/errors.hpp"
#include "rooslab/linalg.hpp"

namespace rooslab {

Ring Ring::modular(const Integer& m) {
  if (m < 2) throw ValidationError("modulus must be at least 2, got " + m.str());
  Ring r;
  r.modulus_ = m;
  return r;
}

bool Ring::is_prime_field() const {
  return is_modular() && is_probable_prime(modulus_);
}

Integer Ring::reduce(const Integer& x) const {
  return is_modular() ? mod_floor(x, modulus_) : x;
}

IntMatrix Ring::reduce(const IntMatrix& m) const {
  if (!is_modular()) return m;
  IntMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) out(i, j) = mod_floor(m(i, j), modulus_);
  return out;
}

IntVector Ring::reduce(const IntVector& v) const {
  if (!is_modular()) return v;
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = mod_floor(v(i), modulus_);
  return out;
}

bool Ring::is_zero_element(const Integer& x) const {
  return is_modular() ? divides(modulus_, x) : is_zero(x);
}

bool Ring::is_zero_matrix(const IntMatrix& m) const {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero_element(m(i, j))) return false;
  return true;
}

bool Ring::equal(const IntMatrix& a, const IntMatrix& b) const {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!is_zero_element(a(i, j) - b(i, j))) return false;
  return true;
}

std::string Ring::tag() const {
  return is_modular() ? "Z/" + modulus_.str() : "Z";
}

Ring Ring::parse(std::string_view tag) {
  if (tag == "Z") return integers();
  if (tag.size() > 2 && tag.substr(0, 2) == "Z/") {
    const std::string digits(tag.substr(2));
    if (digits.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("bad ring tag: " + std::string(tag));
    return modular(Integer(digits));
  }
  throw ValidationError("bad ring tag: " + std::string(tag) +
                        " (expected Z or Z/m)");
}

}  // namespace rooslab
