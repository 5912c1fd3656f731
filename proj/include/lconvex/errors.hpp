#pragma once

#include <stdexcept>
#include <string>

namespace lconvex {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two degrees (or degree-valued structures) from different lattice objects
/// were mixed in one operation.
class LatticeMismatch : public Error {
 public:
  using Error::Error;
};

/// Two L-subsets (or maps) over incompatible carriers were combined.
class CarrierMismatch : public Error {
 public:
  using Error::Error;
};

/// The leq table is not a lattice order (missing join or meet).
class NotALattice : public Error {
 public:
  using Error::Error;
};

/// The tensor table is not a commutative monoid with the top as unit.
class NotAMonoid : public Error {
 public:
  using Error::Error;
};

/// The tensor does not distribute over joins.
class NotDistributive : public Error {
 public:
  using Error::Error;
};

class InvalidSize : public Error {
 public:
  using Error::Error;
};

/// An order matrix violates reflexivity, transitivity or antisymmetry.
/// `axiom` is 1, 2 or 3.
class OrderAxiomViolation : public Error {
 public:
  OrderAxiomViolation(int axiom, const std::string& what)
      : Error(what), axiom_(axiom) {}
  int axiom() const { return axiom_; }

 private:
  int axiom_;
};

/// An exhaustive scan would exceed the configured budget.  Raised instead of
/// silently sampling.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotConvex : public Error {
 public:
  using Error::Error;
};

class NotS0 : public Error {
 public:
  using Error::Error;
};

class NotSober : public Error {
 public:
  using Error::Error;
};

class NotConvexityPreserving : public Error {
 public:
  using Error::Error;
};

/// A checked equivalence between two routes failed; indicates a library bug,
/// never a property of the input.
class EquivalenceViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lconvex
