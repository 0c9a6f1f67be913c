#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rooslab {

/// Exact integer scalar. Expression templates are off so it behaves as a
/// plain value type inside Eigen containers.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

using Index = Eigen::Index;

// Hot-loop helpers on the raw mpz handles; avoid temporaries.
inline mpz_ptr raw(Integer& x) { return x.backend().data(); }
inline mpz_srcptr raw(const Integer& x) { return x.backend().data(); }

inline bool is_zero(const Integer& x) { return mpz_sgn(raw(x)) == 0; }
inline int sign(const Integer& x) { return mpz_sgn(raw(x)); }
inline bool is_unit(const Integer& x) { return mpz_cmpabs_ui(raw(x), 1) == 0; }

/// a -= q * b
inline void submul(Integer& a, const Integer& q, const Integer& b) {
  mpz_submul(raw(a), raw(q), raw(b));
}
/// a += q * b
inline void addmul(Integer& a, const Integer& q, const Integer& b) {
  mpz_addmul(raw(a), raw(q), raw(b));
}

/// Compares |a| with |b|.
inline int compare_abs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(raw(a), raw(b));
}

inline Integer abs(const Integer& x) { return boost::multiprecision::abs(x); }

/// Least non-negative residue of x modulo m (m > 0).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(raw(r), raw(x), raw(m));
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(raw(g), raw(a), raw(b));
  return g;
}

inline bool divides(const Integer& d, const Integer& x) {
  if (is_zero(d)) return is_zero(x);
  return mpz_divisible_p(raw(x), raw(d)) != 0;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Matrix from nested initializer lists, row-major.
IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);
IntVector int_vector(std::initializer_list<long> entries);

/// Product that skips zero entries of `a`; differentials are very sparse.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

bool is_zero_matrix(const IntMatrix& m);

/// Largest absolute entry (0 for an empty matrix).
Integer max_abs_entry(const IntMatrix& m);

}  // namespace rooslab
