#pragma once

#include <stdexcept>
#include <string>

namespace hatom {

//! Argument outside the domain of an operation (negative momentum, delta
//! outside (1/3, 2/3), kappa above the critical ratio, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! A numerical procedure failed: quadrature, root bracketing, ODE stepping.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Shooting / root bracket did not converge. Carries the final bracket.
class ConvergenceError : public NumericalError {
public:
  ConvergenceError(const std::string &what, double lo, double hi)
      : NumericalError(what), m_lo(lo), m_hi(hi) {}
  double lo() const { return m_lo; }
  double hi() const { return m_hi; }

private:
  double m_lo, m_hi;
};

//! A scaled radial grid does not cover the region a computation needs.
class GridExhaustedError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

//! A checked mathematical invariant was violated.
class InvariantViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string &msg) {
  if (!ok)
    throw DomainError(msg);
}
} // namespace detail

} // namespace hatom
