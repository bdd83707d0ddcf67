#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace obstructor {

// GMP-backed exact scalars. Expression templates are disabled so that Eigen
// sees a plain value type.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVector = Vector<Rational>;
using RatMatrix = Matrix<Rational>;

/// Parses "n", "-n" or "n/d" (d != 0). The result is in lowest terms.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return q.sign() == 0; }

template <typename Scalar>
bool is_zero_vector(const Vector<Scalar>& v) {
  for (Index k = 0; k < v.size(); ++k)
    if (v[k] != 0) return false;
  return true;
}

}  // namespace obstructor
