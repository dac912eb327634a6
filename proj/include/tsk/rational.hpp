#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace tsk {

/// Arbitrary-precision integers and rationals. Expression templates are
/// disabled so the types compose cleanly with Eigen.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QVector = VectorX<Rational>;
using QMatrix = MatrixX<Rational>;
using ZVector = VectorX<Integer>;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "p/q", "p", and finite decimals such as "-1.25" (parsed exactly).
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Decimal rendering for human-facing annotations only.
std::string to_decimal(const Rational& q, int digits = 4);

template <typename Scalar>
VectorX<Scalar> zeros(Eigen::Index n) {
  return VectorX<Scalar>::Constant(n, Scalar(0));
}

template <typename Scalar>
VectorX<Scalar> unit(Eigen::Index n, Eigen::Index i) {
  VectorX<Scalar> v = zeros<Scalar>(n);
  v(i) = Scalar(1);
  return v;
}

/// Exact zero test; Eigen's isZero() is tolerance based and must not be used.
template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.coeff(i) != 0) return false;
  return true;
}

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.coeff(i) < 0) return false;
  return true;
}

/// Componentwise partial order: u ⪯ v.
bool precedes(const QVector& u, const QVector& v);

/// Lexicographic order on coordinates; used for every canonical sort.
bool lex_less(const QVector& u, const QVector& v);
bool lex_less(const ZVector& u, const ZVector& v);

/// Scales v by a positive factor to the primitive integer vector on its ray.
/// The zero vector maps to zero.
ZVector primitive(const QVector& v);
ZVector primitive(const ZVector& v);

QVector to_rational(const ZVector& v);

/// Maximum norm of an exact vector.
Rational max_norm(const QVector& v);

std::string to_string(const QVector& v);

}  // namespace tsk
