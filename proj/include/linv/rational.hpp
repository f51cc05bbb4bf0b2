// Exact rational scalar type and Eigen interop.
//
// All arithmetic in this library is exact: the scalar is a GMP rational
// (arbitrary-precision numerator/denominator, always kept in canonical
// form gcd(|num|, den) = 1 with den > 0).  Dense containers are Eigen
// matrices instantiated on that scalar; no floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>

namespace Eigen {

// Standard custom-scalar registration so Matrix<mpq_class> works.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace linv {

using Rat = mpq_class;
using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Malformed input: bad files, dimension mismatches, inadmissible data.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A guaranteed identity failed to hold; signals a bug, never bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// p^k for integer k of either sign (p != 0).
inline Rat rat_pow(long base, long exp) {
  if (base == 0) throw InputError("rat_pow: zero base");
  mpz_class b(base);
  mpz_class num;
  unsigned long a = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), a);
  Rat r(num);
  if (exp < 0) r = 1 / r;
  return r;
}

/// Serializes as "num/den", with "/den" omitted when den = 1.  Examples:
/// "7/3", "-2", "0".
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

/// Strict parser for the fraction-string format.  Rejects anything GMP
/// would not canonicalize to the same text (whitespace, empty parts,
/// zero denominators).
inline Rat rat_from_string(const std::string& s) {
  auto bad = [&](const char* why) {
    throw InputError("bad rational \"" + s + "\": " + why);
  };
  if (s.empty()) bad("empty");
  std::size_t i = 0;
  if (s[0] == '-') i = 1;
  std::size_t slash = std::string::npos;
  if (i >= s.size()) bad("no digits");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash != std::string::npos) bad("multiple '/'");
      slash = j;
      continue;
    }
    if (s[j] < '0' || s[j] > '9') bad("invalid character");
  }
  if (slash != std::string::npos && (slash == i || slash + 1 == s.size()))
    bad("missing numerator or denominator");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) bad("unparsable");
  if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) bad("zero denominator");
  r.canonicalize();
  return r;
}

inline bool mats_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool mat_is_zero(const Mat& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

inline std::string mat_to_string(const Mat& a) {
  std::string out = "[";
  for (Index i = 0; i < a.rows(); ++i) {
    out += (i ? "; " : "");
    for (Index j = 0; j < a.cols(); ++j)
      out += (j ? "," : "") + rat_to_string(a(i, j));
  }
  return out + "]";
}

inline std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + rat_to_string(v(i));
  return out + ")";
}

}  // namespace linv
