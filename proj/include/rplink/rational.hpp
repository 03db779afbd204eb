#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <string>

#include <rplink/errors.hpp>

namespace rplink {

// Exact rational scalar. Expression templates are disabled so the type can
// serve directly as an Eigen matrix scalar.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// "num/den" (den omitted when 1).
std::string rational_text(const Rational& r);
Rational parse_rational(const std::string& s);  // throws FormatError

}  // namespace rplink

namespace Eigen {

template <>
struct NumTraits<rplink::Rational> : GenericNumTraits<rplink::Rational> {
  typedef rplink::Rational Real;
  typedef rplink::Rational NonInteger;
  typedef rplink::Rational Nested;
  typedef rplink::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
