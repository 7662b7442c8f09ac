#pragma once

#include <vector>

#include "qmld/group.hpp"
#include "qmld/poly.hpp"

namespace qmld {

/// A k[t]-scheme cut out by twisted generators in k[t][x_1..x_N].
/// Generators live in the (x_1..x_N, t) ring with t as the last variable and
/// are kept verbatim, common t factors included: downstream Jacobian and jet
/// computations depend on the literal generators.
struct TwistedScheme {
  WeightVector gamma;            // the sector the twist belongs to
  std::vector<Poly> generators;  // in k[t][x], possibly empty (ambient space)
  std::size_t ambient_dim = 0;   // N
  std::size_t codim = 0;         // c = number of generators
  std::size_t rel_dim = 0;       // n = N - c

  MonomialOrder ring_order() const { return MonomialOrder::grevlex(ambient_dim + 1); }
};

/// t-weight <e,u>/d of the monomial x^u under the sector weights.
Rat monomial_t_weight(const Exps& u, const WeightVector& w);

/// True iff every monomial u of f satisfies <e,u> = 0 mod d.
/// f must not involve t.
bool is_invariant(const Poly& f, const WeightVector& w);

/// The substitution x_i -> t^{e_i/d} x_i on an invariant polynomial: each
/// monomial c x^u picks up the integer t power <e,u>/d.
/// Accepts f either in the x ring (nvars = N) or the (x,t) ring with no t.
/// Throws NotInvariant when a monomial has fractional t-weight.
Poly twist_poly(const Poly& f, const WeightVector& w);

/// Builds the twisted scheme from equations f_1..f_c (in the x ring or the
/// (x,t) ring without t), all invariant and vanishing at the origin.
TwistedScheme build_twisted_scheme(const std::vector<Poly>& equations,
                                   const WeightVector& w, std::size_t ambient_dim);

/// Sets t = 1, returning a polynomial in the same (x,t) ring with no t.
Poly untwist_t1(const Poly& f, std::size_t ambient_dim);

}  // namespace qmld
