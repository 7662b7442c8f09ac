#pragma once

#include <stdexcept>
#include <string>

namespace qmld {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Group enumeration passed the configured element cap.
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error(what) {}
};

/// Input matrix is not a generalized permutation matrix.
struct NotMonomial : Error {
  explicit NotMonomial(const std::string& what) : Error(what) {}
};

/// Polynomial fails the required group-invariance.
struct NotInvariant : Error {
  explicit NotInvariant(const std::string& what) : Error(what) {}
};

/// Defining equation does not vanish at the origin.
struct NotAtOrigin : Error {
  explicit NotAtOrigin(const std::string& what) : Error(what) {}
};

/// The group contains a pseudo-reflection.
struct NotFreeInCodim1 : Error {
  explicit NotFreeInCodim1(const std::string& what) : Error(what) {}
};

/// An ideal factor has a generator that is not invariant.
struct NonInvariantIdeal : Error {
  explicit NonInvariantIdeal(const std::string& what) : Error(what) {}
};

/// A computation ran past its configured step budget.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/// The ideal is not monomial in the basis needed for a cyclic sector.
struct UnsupportedIdealBasisChange : Error {
  explicit UnsupportedIdealBasisChange(const std::string& what) : Error(what) {}
};

/// Malformed instance file or schema violation.
struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

}  // namespace qmld
