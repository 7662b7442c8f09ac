#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmld/rational.hpp"

namespace qmld {

/// Root of unity of a fixed ambient order L, stored as an exponent mod L.
struct RootOfUnity {
  long order = 1;     // ambient order L, shared across a group
  long exponent = 0;  // in [0, L)

  RootOfUnity() = default;
  RootOfUnity(long L, long k) : order(L), exponent(((k % L) + L) % L) {}

  RootOfUnity operator*(const RootOfUnity& o) const {
    return RootOfUnity(order, exponent + o.exponent);
  }
  RootOfUnity inverse() const { return RootOfUnity(order, -exponent); }
  bool is_one() const { return exponent == 0; }
  bool operator==(const RootOfUnity& o) const = default;
};

/// Generalized permutation matrix over roots of unity of ambient order L.
/// Column j carries scalar zeta_L^{scalar[j]} and maps basis vector j to
/// that multiple of basis vector perm[j].
struct MonomialMatrix {
  std::size_t dim = 0;
  long ambient_order = 1;
  std::vector<std::size_t> perm;  // 0-based image list
  std::vector<long> scalars;      // exponents mod ambient_order

  static MonomialMatrix identity(std::size_t n, long L);
  static MonomialMatrix diagonal(long L, std::vector<long> exponents);

  MonomialMatrix compose(const MonomialMatrix& rhs) const;  // this * rhs
  MonomialMatrix inverse() const;
  bool is_identity() const;
  bool is_diagonal() const;
  Rat det_fraction() const;  // argument of det in [0,1), det = e^{2 pi i f}

  /// Strict total order used for canonical element lists.
  bool operator<(const MonomialMatrix& o) const;
  bool operator==(const MonomialMatrix& o) const = default;

  std::string to_string() const;
};

/// Diagonalized data (d; e_1..e_N) of a finite-order element: the eigenvalue
/// multiset is { zeta_d^{e_i} } with d the multiplicative order.
struct WeightVector {
  long order = 1;            // d
  std::vector<long> exps;    // 0 <= e_i < d, sorted ascending

  bool operator==(const WeightVector& o) const = default;
  std::string to_string() const;
};

struct FiniteGroup {
  std::size_t dim = 0;
  long ambient_order = 1;
  std::vector<MonomialMatrix> elements;  // canonical sorted order, closed
  std::vector<MonomialMatrix> generators;

  std::size_t order() const { return elements.size(); }
  bool is_diagonal() const;
};

inline constexpr std::size_t kDefaultGroupCap = 10000;

/// Closure of the generated group, elements in canonical order.
/// Throws CapExceeded past `cap`, NotMonomial on malformed generators.
FiniteGroup closure(const std::vector<MonomialMatrix>& generators,
                    std::size_t cap = kDefaultGroupCap);

/// Eigenvalue data of a monomial matrix, computed cycle by cycle: a
/// permutation cycle of length l whose scalars multiply to zeta contributes
/// the l-th roots of zeta.
WeightVector weights(const MonomialMatrix& g);

/// (1/d) * sum e_i as an exact rational.
Rat age(const WeightVector& w);

/// True iff no non-identity element fixes a hyperplane pointwise; otherwise
/// returns the offending pseudo-reflection.
struct FreeInCodim1Result {
  bool free = true;
  std::optional<MonomialMatrix> witness;
};
FreeInCodim1Result is_free_in_codim1(const FiniteGroup& G);

/// Partition into conjugacy classes; each class sorted, classes ordered by
/// their minimal element.
std::vector<std::vector<MonomialMatrix>> conjugacy_classes(const FiniteGroup& G);

/// Multiplicative order via the weight data (lcm of eigenvalue orders).
long element_order(const MonomialMatrix& g);

/// Coordinate-aligned weight data of a diagonal element: exps[i] belongs to
/// x_i, no sorting. This is the form the twisting and lattice constructions
/// consume.
WeightVector diagonal_weights(const MonomialMatrix& g);

/// Coordinate-aligned weight vectors of every element of a diagonal group,
/// identity included.
std::vector<WeightVector> group_weights(const FiniteGroup& G);

}  // namespace qmld
