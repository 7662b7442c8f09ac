#include "qmld/twist.hpp"

#include "qmld/errors.hpp"

namespace qmld {

Rat monomial_t_weight(const Exps& u, const WeightVector& w) {
  long s = 0;
  for (std::size_t i = 0; i < w.exps.size(); ++i) s += w.exps[i] * static_cast<long>(u[i]);
  Rat r(s, w.order);
  r.canonicalize();
  return r;
}

namespace {

// x-part of a monomial that may live in the (x,t) ring
Exps x_part(const Exps& mono, std::size_t nx) { return Exps(mono.begin(), mono.begin() + nx); }

void check_no_t(const Poly& f, std::size_t nx) {
  if (f.nvars() == nx) return;
  for (const auto& t : f.terms())
    if (t.mono[nx] != 0) throw NotInvariant("polynomial already involves t");
}

}  // namespace

bool is_invariant(const Poly& f, const WeightVector& w) {
  const std::size_t nx = w.exps.size();
  check_no_t(f, nx);
  for (const auto& t : f.terms()) {
    Rat tw = monomial_t_weight(x_part(t.mono, nx), w);
    if (!rat_is_integer(tw)) return false;
  }
  return true;
}

Poly twist_poly(const Poly& f, const WeightVector& w) {
  const std::size_t nx = w.exps.size();
  check_no_t(f, nx);
  const MonomialOrder ord = MonomialOrder::grevlex(nx + 1);
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    Exps u = x_part(t.mono, nx);
    Rat tw = monomial_t_weight(u, w);
    if (!rat_is_integer(tw))
      throw NotInvariant("monomial of t-weight " + rat_to_string(tw) + " is not invariant");
    Exps m(nx + 1, 0);
    for (std::size_t i = 0; i < nx; ++i) m[i] = u[i];
    m[nx] = static_cast<unsigned>(tw.get_num().get_ui());
    ts.push_back({std::move(m), t.coeff});
  }
  return Poly::from_terms(nx + 1, std::move(ts), ord);
}

TwistedScheme build_twisted_scheme(const std::vector<Poly>& equations,
                                   const WeightVector& w, std::size_t ambient_dim) {
  if (w.exps.size() != ambient_dim) throw NotInvariant("weight vector arity mismatch");
  TwistedScheme s;
  s.gamma = w;
  s.ambient_dim = ambient_dim;
  s.codim = equations.size();
  s.rel_dim = ambient_dim - equations.size();
  for (const auto& f : equations) {
    if (f.at_origin() != 0) throw NotAtOrigin("equation does not vanish at the origin");
    s.generators.push_back(twist_poly(f, w));
  }
  return s;
}

Poly untwist_t1(const Poly& f, std::size_t ambient_dim) {
  const std::size_t nx = ambient_dim;
  const MonomialOrder ord = MonomialOrder::grevlex(nx + 1);
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    Exps m = t.mono;
    m[nx] = 0;
    ts.push_back({std::move(m), t.coeff});
  }
  return Poly::from_terms(nx + 1, std::move(ts), ord);
}

}  // namespace qmld
