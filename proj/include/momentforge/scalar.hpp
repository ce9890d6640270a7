#pragma once

// Eigen traits for the binary128 real and complex scalars.

#include <limits>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace Eigen {

template <>
struct NumTraits<boost::multiprecision::float128> : GenericNumTraits<boost::multiprecision::float128> {
  using R = boost::multiprecision::float128;
  typedef R Real;
  typedef R NonInteger;
  typedef R Nested;
  typedef double Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static R epsilon() { return std::numeric_limits<R>::epsilon(); }
  static R dummy_precision() { return 1000 * epsilon(); }
  static R highest() { return (std::numeric_limits<R>::max)(); }
  static R lowest() { return -(std::numeric_limits<R>::max)(); }
  static R infinity() { return std::numeric_limits<R>::infinity(); }
  static R quiet_NaN() { return std::numeric_limits<R>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<R>::digits10; }
  static int digits() { return std::numeric_limits<R>::digits; }
};

template <>
struct NumTraits<boost::multiprecision::complex128> : GenericNumTraits<boost::multiprecision::complex128> {
  using R = boost::multiprecision::float128;
  using C = boost::multiprecision::complex128;
  typedef R Real;
  typedef C NonInteger;
  typedef C Nested;
  typedef double Literal;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32
  };
  static R epsilon() { return std::numeric_limits<R>::epsilon(); }
  static R dummy_precision() { return 1000 * epsilon(); }
  static C highest() { return (std::numeric_limits<R>::max)(); }
  static C lowest() { return -(std::numeric_limits<R>::max)(); }
  static C infinity() { return std::numeric_limits<R>::infinity(); }
  static C quiet_NaN() { return std::numeric_limits<R>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<R>::digits10; }
  static int digits() { return std::numeric_limits<R>::digits; }
};

template <typename Op>
struct ScalarBinaryOpTraits<boost::multiprecision::complex128, boost::multiprecision::float128, Op> {
  typedef boost::multiprecision::complex128 ReturnType;
};
template <typename Op>
struct ScalarBinaryOpTraits<boost::multiprecision::float128, boost::multiprecision::complex128, Op> {
  typedef boost::multiprecision::complex128 ReturnType;
};

}  // namespace Eigen
