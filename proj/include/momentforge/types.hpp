#pragma once

#include <stdexcept>
#include <string>

#include "momentforge/scalar.hpp"

#include <Eigen/Dense>

namespace momentforge {

using Real = boost::multiprecision::float128;
using Complex = boost::multiprecision::complex128;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

struct Tolerances {
  Real rank_rtol = 1e-10L;
  Real psd_atol = 1e-9L;
  Real eq_atol = 1e-9L;

  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

class NotExtendableError : public Error {
 public:
  using Error::Error;
};

class EmptyBasisError : public Error {
 public:
  using Error::Error;
};

class SingularDenominatorError : public Error {
 public:
  SingularDenominatorError(const std::string& what, Complex z, Real cond)
      : Error(what), z_(z), cond_(cond) {}
  Complex z() const { return z_; }
  Real cond() const { return cond_; }

 private:
  Complex z_;
  Real cond_;
};

inline const Complex kI{0, 1};

inline Real eps() { return std::numeric_limits<Real>::epsilon(); }

}  // namespace momentforge
