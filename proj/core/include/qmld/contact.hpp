#pragma once

#include <vector>

#include "qmld/lattice.hpp"

namespace qmld {

/// One order condition on a twisted monomial ideal: each generator is an
/// x-exponent vector u with the integer t-weight it acquired from the sector
/// twist. Along the stratum of arcs with exact coordinate orders m, a
/// generator has order tweight + <m,u> and the ideal the minimum of those.
struct TwistedOrderConstraint {
  enum class Kind { AtLeast, Exact };
  std::vector<Exps> gens;
  std::vector<long> tweights;
  long bound = 0;
  Kind kind = Kind::AtLeast;
};

struct ContactSpec {
  std::size_t dim = 0;
  std::vector<TwistedOrderConstraint> constraints;
};

/// Codimension of a contact cylinder on the twisted smooth ambient: the
/// exact minimum of sum(m_i) over order vectors m subject to the
/// constraints, or +infinity when no stratum satisfies them.
struct CodimValue {
  bool infinite = false;
  long value = 0;
  std::vector<long> witness;  // attaining order vector when finite
};

CodimValue contact_codim(const ContactSpec& spec);

struct QuotFormulaOptions {
  long min_window = 2;        // floor for the per-factor w window
  std::size_t jobs = 1;       // parallel sector evaluation
  ToricOptions toric;
};

/// The quotient-case mld as an infimum over sectors gamma and order indices
/// w of contact-locus codimension + age(gamma) - sum delta_j w_j, with the
/// per-factor window certified against the toric witness. Unboundedness is
/// delegated to the lattice ray oracle.
MldValue formula_mld_quot(const std::vector<WeightVector>& weights, std::size_t dim,
                          const MonomialRIdeal& a, const QuotFormulaOptions& opts = {});

}  // namespace qmld
