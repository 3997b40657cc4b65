#ifndef HELLY_EXACT_HPP
#define HELLY_EXACT_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace helly {

// Arbitrary-precision rational, always in canonical form (gcd 1, positive
// denominator). Expression templates are off so Eigen sees a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Point = VectorX<Rational>;
using Matrix = MatrixX<Rational>;

/// Thrown for structurally invalid input (shape mismatch, bad literal, ...).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "n", "-n" or "p/q". A zero denominator is rejected.
Rational parse_rational(std::string_view text);

/// "n" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

std::string to_string(const Point& point);

inline Point make_point(std::initializer_list<Rational> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) p(i++) = c;
  return p;
}

inline Point zero_point(Eigen::Index dim) { return Point::Constant(dim, Rational(0)); }

inline Point unit_point(Eigen::Index dim, Eigen::Index axis) {
  Point p = zero_point(dim);
  p(axis) = 1;
  return p;
}

inline bool is_zero(const Point& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) != 0) return false;
  return true;
}

/// Structural equality; Eigen's operator== would produce an expression.
inline bool equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

inline Rational dot(const Point& a, const Point& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

/// Lexicographic order on coordinates, used for canonical sorting.
inline bool lex_less(const Point& a, const Point& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

}  // namespace helly

#endif  // HELLY_EXACT_HPP
