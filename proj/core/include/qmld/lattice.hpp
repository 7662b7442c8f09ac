#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmld/group.hpp"
#include "qmld/poly.hpp"

namespace qmld {

/// A formal product of monomial ideals with non-negative rational exponents.
struct MonomialIdealFactor {
  std::vector<Exps> gens;  // exponent vectors, at least one
  Rat exponent;            // delta_j >= 0
};

struct MonomialRIdeal {
  std::vector<MonomialIdealFactor> factors;

  bool empty() const { return factors.empty(); }
};

/// Lattice of the abelian diagonal quotient: Z^N extended by the weight
/// vectors e/d of the group elements. Stored through its finite set of coset
/// representatives in the half-open unit box.
struct QuotientLattice {
  std::size_t dim = 0;
  std::vector<std::vector<Rat>> coset_reps;  // in [0,1)^N, zero vector included
};

QuotientLattice build_quotient_lattice(const std::vector<WeightVector>& weights,
                                       std::size_t dim);

enum class MldStatus { Exact, LowerBound, StabilizedHeuristic };

std::string to_string(MldStatus s);

struct MldWitness {
  std::optional<WeightVector> gamma;      // minimizing sector, when applicable
  std::vector<Rat> lattice_point;         // attaining point v (finite case)
  std::vector<Rat> ray;                   // descent direction (minus infinity)
  std::vector<long> contact_orders;       // (w_1..w_s, b1) indices, when applicable
  std::optional<long> jacobian_order;     // b1
  std::string note;                       // explored bounds etc.
};

/// Extended-rational mld with witness and exactness status.
struct MldValue {
  bool minus_infinity = false;
  Rat value;  // meaningful when finite
  MldStatus status = MldStatus::Exact;
  MldWitness witness;

  static MldValue finite(Rat v, MldStatus s = MldStatus::Exact) {
    MldValue m;
    m.value = std::move(v);
    m.status = s;
    return m;
  }
  static MldValue minus_inf() {
    MldValue m;
    m.minus_infinity = true;
    return m;
  }

  bool same_extended_value(const MldValue& o) const {
    if (minus_infinity != o.minus_infinity) return false;
    return minus_infinity || value == o.value;
  }
  std::string value_string() const { return minus_infinity ? "-inf" : rat_to_string(value); }
};

/// min over generators u of <v,u>, the order of the monomial ideal factor
/// along the monomial valuation v.
Rat ord_monomial(const std::vector<Rat>& v, const std::vector<Exps>& gens);

/// sum v_i minus the weighted orders of the ideal factors.
Rat log_discrepancy(const std::vector<Rat>& v, const MonomialRIdeal& a);

/// Minimal generators of the ideal of invariant monomials with zero constant
/// term: pure powers x_i^{s_i} plus the minimal mixed invariants below them.
std::vector<Exps> invariant_maximal_ideal_gens(const QuotientLattice& lat,
                                               std::size_t cap = 2000000);

struct UnboundedCheck {
  bool unbounded = false;
  std::vector<Rat> ray;  // lattice direction with negative objective
};

/// Ray analysis of the piecewise-linear objective over the orthant cone:
/// decides whether the log-discrepancy objective is negative somewhere on
/// the rational cone, per linearity piece, by exact LP feasibility.
UnboundedCheck is_unbounded_below(const std::vector<WeightVector>& weights,
                                  std::size_t dim, const MonomialRIdeal& a);

struct ToricOptions {
  int certificate_rounds = 6;  // doublings of the enumeration radius
};

/// mld at the origin of the abelian diagonal quotient with a monomial
/// R-ideal, by exact minimization of the log-discrepancy objective over the
/// interior lattice points of the orthant.
MldValue mld_origin_toric(const std::vector<WeightVector>& weights, std::size_t dim,
                          const MonomialRIdeal& a, const ToricOptions& opts = {});

/// Independent oracle: exhaustive scan of all interior lattice points with
/// coordinate sum at most `sum_bound`. Returns the minimum found (if any
/// point lies in the region) together with its witness.
std::optional<std::pair<Rat, std::vector<Rat>>> mld_toric_brute_force(
    const std::vector<WeightVector>& weights, std::size_t dim, const MonomialRIdeal& a,
    const Rat& sum_bound);

}  // namespace qmld
