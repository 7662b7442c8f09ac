#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmld/contact.hpp"
#include "qmld/group.hpp"
#include "qmld/jets.hpp"
#include "qmld/lattice.hpp"

namespace qmld {

/// A complete intersection inside the quotient of affine space: invariant
/// equations f_1..f_c plus a monomial R-ideal, all at the origin.
struct HyperquotientInstance {
  FiniteGroup group;
  std::vector<Poly> equations;  // in the x ring (nvars = dim)
  MonomialRIdeal ideal;
};

struct EngineOptions {
  unsigned m_max = 6;
  long w_max = 4;
  long b1_max = 4;
  std::size_t jobs = 1;
  GroebnerOptions groebner;
  ToricOptions toric;
};

struct VerificationReport {
  MldValue lhs;
  MldValue rhs;
  std::optional<MldValue> third;
  std::string lhs_label;
  std::string rhs_label;
  std::string third_label;
  enum class Verdict { Equal, ConsistentWithinStatus, Mismatch } verdict = Verdict::Mismatch;
  std::string trail;

  static const char* verdict_name(Verdict v) {
    switch (v) {
      case Verdict::Equal: return "equal";
      case Verdict::ConsistentWithinStatus: return "consistent-within-status";
      case Verdict::Mismatch: return "mismatch";
    }
    return "?";
  }
};

/// mld at the origin as the minimum over cyclic subgroups of the toric
/// evaluation on each cyclic quotient. Monomial-matrix sectors are admitted
/// with an empty ideal only; diagonal sectors carry the ideal through.
MldValue mld_reid_tai(const FiniteGroup& G, const MonomialRIdeal& a,
                      const EngineOptions& opts = {});

/// The hyperquotient formula: infimum over sectors gamma, order indices w
/// and Jacobian orders b1 of cylinder codim + age - b1 - sum delta w.
/// Falls back to the exact quotient formula when there are no equations.
MldValue mld_hyperquot(const HyperquotientInstance& inst, const EngineOptions& opts = {});

/// Both sides of precise inversion of adjunction: the ambient pair
/// (A, (f_1..f_c) a^delta) against the subvariety pair (B, a O_B ^delta).
VerificationReport verify_pia(const HyperquotientInstance& inst, const EngineOptions& opts = {});

/// Cross-check of the three quotient-case backends (contact formula, toric
/// minimization, cyclic reduction); verdict equal only on exact agreement.
VerificationReport verify_consistency(const FiniteGroup& G, const MonomialRIdeal& a,
                                      const EngineOptions& opts = {});

struct AccReport {
  std::vector<Rat> values;  // deduplicated, ascending
  bool oracle_match = true;
  bool values_in_range = true;
  std::size_t instances = 0;
};

/// All mld values of cyclic quotient singularities 1/d(e_1..e_n) with
/// d <= d_max, free in codimension one, up to coordinate permutation; each
/// value is cross-checked against the brute-force lattice oracle.
AccReport acc_sample(unsigned n, long d_max, const EngineOptions& opts = {});

}  // namespace qmld
