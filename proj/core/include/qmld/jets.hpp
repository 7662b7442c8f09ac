#pragma once

#include <optional>
#include <vector>

#include "qmld/groebner.hpp"
#include "qmld/twist.hpp"

namespace qmld {

/// Ring of jet coefficients a_{i,j}, 1 <= i <= N, 0 <= j <= level:
/// coordinate i carries the truncated series sum_j a_{i,j} t^j. Variable
/// index of a_{i,j} is i*(level+1)+j with 0-based i.
struct JetRing {
  std::size_t nx = 0;
  unsigned level = 0;

  std::size_t nvars() const { return nx * (level + 1); }
  std::size_t var(std::size_t i, unsigned j) const { return i * (level + 1) + j; }

  /// Default order: blocks of coefficient variables by level, ascending.
  MonomialOrder default_order() const;
  std::vector<std::size_t> level_vars(unsigned j) const;
};

/// Level-m jet ideal of a twisted scheme: the t^0..t^m coefficients of each
/// generator after substituting the coefficient series for the coordinates
/// (t is the jet parameter itself). Listed coefficient-major, so the level-m
/// list is a prefix of the level-(m+1) list.
struct JetIdeal {
  JetRing ring;
  std::vector<Poly> gens;  // c*(m+1) entries, zero polynomials kept
};

JetIdeal jet_ideal(const TwistedScheme& S, unsigned level);

/// Coefficients t^0..t^cap of an (x,t)-ring polynomial pulled back to the
/// jet ring at the given level.
std::vector<Poly> jet_coefficients(const Poly& g, std::size_t nx, const JetRing& ring,
                                   unsigned cap);

/// Krull dimension of the level-m jet scheme.
long jet_dimension(const TwistedScheme& S, unsigned level, const GroebnerOptions& opts = {});

/// Ideal of c-minors of the relative Jacobian matrix, reduced modulo the
/// scheme generators; the unit ideal for the ambient space (c = 0).
IdealBasis jacobian_ideal(const TwistedScheme& S, const GroebnerOptions& opts = {});

struct JetOrderConstraint {
  enum class Kind { AtLeast, Exact, AtMost };
  std::vector<Poly> gens;  // in the (x,t) ring of the scheme
  long bound = 0;
  Kind kind = Kind::AtLeast;
};

struct CylinderSpec {
  std::vector<JetOrderConstraint> constraints;
  /// Extra levels built and then eliminated before measuring dimensions:
  /// within a fixed Jacobian-order stratum e, truncations of honest arcs at
  /// level m are projections from level m+e, so loci are built at m+e and
  /// contracted back.
  unsigned lift_depth = 0;
};

struct CylinderEstimate {
  bool empty = false;       // some probed level has no points: empty cylinder
  long codim_lo = 0;        // interval across probed levels
  long codim_hi = 0;
  std::vector<std::pair<unsigned, long>> per_level;
  bool stabilized = false;  // three consecutive probed levels agree
  bool smooth_case = false; // scheme smooth over k[t] with trivial stratum
  bool budget_hit = false;  // partial results only

  long codim() const { return per_level.empty() ? 0 : per_level.back().second; }
};

struct JetOptions {
  unsigned m_max = 6;
  GroebnerOptions groebner;
};

CylinderEstimate cylinder_codim_estimate(const TwistedScheme& S, const CylinderSpec& spec,
                                         const JetOptions& opts = {});

}  // namespace qmld
