#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmld/rational.hpp"

namespace qmld {

/// Dense exponent vector of a monomial.
using Exps = std::vector<unsigned>;

inline unsigned total_degree(const Exps& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

Exps exps_mul(const Exps& a, const Exps& b);
bool exps_divides(const Exps& a, const Exps& b);  // a | b componentwise
Exps exps_div(const Exps& b, const Exps& a);      // b / a, requires a | b
Exps exps_lcm(const Exps& a, const Exps& b);

/// Total order on monomials compatible with multiplication, 1 minimal.
/// Block orders compare group by group (most significant group first) with
/// graded reverse lexicographic comparison inside each group; they serve as
/// elimination orders when the eliminated variables form the first group.
class MonomialOrder {
 public:
  enum class Kind { GrevLex, Lex, Block };

  static MonomialOrder grevlex(std::size_t nvars);
  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder block(std::size_t nvars, std::vector<std::vector<std::size_t>> groups);

  // <0 if a < b, 0 if equal, >0 if a > b
  int compare(const Exps& a, const Exps& b) const;
  bool less(const Exps& a, const Exps& b) const { return compare(a, b) < 0; }

  std::size_t nvars() const { return nvars_; }
  Kind kind() const { return kind_; }
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }

  /// Stable textual form, used in cache keys.
  std::string describe() const;

 private:
  MonomialOrder(Kind k, std::size_t n) : kind_(k), nvars_(n) {}
  Kind kind_;
  std::size_t nvars_;
  std::vector<std::vector<std::size_t>> groups_;  // Block only
};

struct Term {
  Exps mono;
  Rat coeff;
};

/// Multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted descending under the order passed at construction;
/// all arithmetic helpers take that order and preserve the invariant.
class Poly {
 public:
  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly zero(std::size_t nvars) { return Poly(nvars); }
  static Poly constant(std::size_t nvars, const Rat& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(Exps e, const Rat& c);
  static Poly from_terms(std::size_t nvars, std::vector<Term> ts, const MonomialOrder& ord);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].mono) == 0); }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& lead() const { return terms_.front(); }

  Poly resorted(const MonomialOrder& ord) const;

  /// Value at the origin (the constant term).
  Rat at_origin() const;

  bool operator==(const Poly& o) const;

 private:
  friend Poly poly_add(const Poly&, const Poly&, const MonomialOrder&);
  friend Poly poly_sub(const Poly&, const Poly&, const MonomialOrder&);
  friend Poly poly_mul(const Poly&, const Poly&, const MonomialOrder&);
  friend Poly poly_mul_truncated(const Poly&, const Poly&, const MonomialOrder&, std::size_t, unsigned);
  friend Poly poly_scale(const Poly&, const Rat&);
  friend Poly poly_mul_term(const Poly&, const Term&, const MonomialOrder&);
  std::size_t nvars_;
  std::vector<Term> terms_;
};

Poly poly_add(const Poly& a, const Poly& b, const MonomialOrder& ord);
Poly poly_sub(const Poly& a, const Poly& b, const MonomialOrder& ord);
Poly poly_mul(const Poly& a, const Poly& b, const MonomialOrder& ord);
Poly poly_scale(const Poly& a, const Rat& c);
Poly poly_neg(const Poly& a);
Poly poly_mul_term(const Poly& a, const Term& t, const MonomialOrder& ord);
Poly poly_pow(const Poly& a, unsigned k, const MonomialOrder& ord);

/// Product dropping every monomial whose exponent of variable `var` exceeds
/// `cap`. Used for series expansion modulo a power of that variable.
Poly poly_mul_truncated(const Poly& a, const Poly& b, const MonomialOrder& ord,
                        std::size_t var, unsigned cap);

Poly poly_derivative(const Poly& f, std::size_t var, const MonomialOrder& ord);

/// Substitutes images[i] for variable i. Images live in a ring with
/// `out_nvars` variables; the result is sorted under `out_ord`.
Poly poly_substitute(const Poly& f, const std::vector<Poly>& images,
                     const MonomialOrder& out_ord);

/// Multiply every coefficient so the polynomial becomes integral and
/// primitive (content 1), with positive leading coefficient. Zero stays zero.
Poly poly_make_primitive(const Poly& f);

/// Scale so the leading coefficient is 1.
Poly poly_make_monic(const Poly& f);

std::string poly_to_string(const Poly& f, const std::vector<std::string>& names);

/// Ring naming helpers.
std::vector<std::string> ring_names_x(std::size_t nx);          // x1..xN
std::vector<std::string> ring_names_xt(std::size_t nx);         // x1..xN, t
std::vector<std::string> ring_names_jet(std::size_t nx, unsigned level,
                                        bool with_t);           // a1_0..aN_m[, t]

/// Parses the plain-text grammar `x1^3 + 2/3*x2*x3` with exact rational
/// coefficients. Accepts variables x1..xN and, when `with_t`, the variable t
/// (as the last ring variable). Throws InvalidInput on malformed text.
Poly parse_poly(const std::string& text, std::size_t nx, bool with_t,
                const MonomialOrder& ord);

/// Canonical display of a polynomial over x1..xN,t: terms ordered by
/// ascending t power, then descending grevlex in the x part. This is the
/// normal form used by golden string comparisons.
std::string poly_to_string_xt(const Poly& f, std::size_t nx);

}  // namespace qmld
