#include "qmld/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "qmld/errors.hpp"

namespace qmld {

Exps exps_mul(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool exps_divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps exps_div(const Exps& b, const Exps& a) {
  Exps r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - a[i];
  return r;
}

Exps exps_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

MonomialOrder MonomialOrder::grevlex(std::size_t nvars) {
  return MonomialOrder(Kind::GrevLex, nvars);
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) {
  return MonomialOrder(Kind::Lex, nvars);
}

MonomialOrder MonomialOrder::block(std::size_t nvars, std::vector<std::vector<std::size_t>> groups) {
  MonomialOrder o(Kind::Block, nvars);
  o.groups_ = std::move(groups);
  return o;
}

namespace {

// grevlex on the listed variable positions
int grevlex_cmp(const Exps& a, const Exps& b, const std::vector<std::size_t>& vars) {
  long da = 0, db = 0;
  for (std::size_t v : vars) {
    da += a[v];
    db += b[v];
  }
  if (da != db) return da < db ? -1 : 1;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
  }
  return 0;
}

int grevlex_cmp_all(const Exps& a, const Exps& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exps& a, const Exps& b) const {
  switch (kind_) {
    case Kind::GrevLex:
      return grevlex_cmp_all(a, b);
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::Block:
      for (const auto& g : groups_) {
        int c = grevlex_cmp(a, b, g);
        if (c != 0) return c;
      }
      return 0;
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::GrevLex:
      os << "grevlex(" << nvars_ << ")";
      break;
    case Kind::Lex:
      os << "lex(" << nvars_ << ")";
      break;
    case Kind::Block:
      os << "block(" << nvars_ << ";";
      for (const auto& g : groups_) {
        os << "[";
        for (std::size_t v : g) os << v << ",";
        os << "]";
      }
      os << ")";
      break;
  }
  return os.str();
}

Poly Poly::constant(std::size_t nvars, const Rat& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({Exps(nvars, 0), c});
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Poly p(nvars);
  Exps e(nvars, 0);
  e[i] = 1;
  p.terms_.push_back({std::move(e), Rat(1)});
  return p;
}

Poly Poly::monomial(Exps e, const Rat& c) {
  Poly p(e.size());
  if (c != 0) p.terms_.push_back({std::move(e), c});
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> ts, const MonomialOrder& ord) {
  std::map<Exps, Rat, std::function<bool(const Exps&, const Exps&)>> acc(
      [&ord](const Exps& a, const Exps& b) { return ord.compare(a, b) > 0; });
  for (auto& t : ts) {
    if (t.coeff == 0) continue;
    auto [it, fresh] = acc.emplace(std::move(t.mono), t.coeff);
    if (!fresh) it->second += t.coeff;
  }
  Poly p(nvars);
  for (auto& [m, c] : acc) {
    if (c != 0) p.terms_.push_back({m, c});
  }
  return p;
}

Poly Poly::resorted(const MonomialOrder& ord) const {
  return from_terms(nvars_, terms_, ord);
}

Rat Poly::at_origin() const {
  for (const auto& t : terms_)
    if (total_degree(t.mono) == 0) return t.coeff;
  return Rat(0);
}

bool Poly::operator==(const Poly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  // both sides sorted under the same order in practice; compare as multisets
  auto key = [](const Term& t) { return t.mono; };
  std::vector<Term> a = terms_, b = o.terms_;
  auto cmp = [&](const Term& x, const Term& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].mono != b[i].mono || a[i].coeff != b[i].coeff) return false;
  return true;
}

Poly poly_add(const Poly& a, const Poly& b, const MonomialOrder& ord) {
  Poly r(a.nvars_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = ord.compare(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Rat s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (s != 0) r.terms_.push_back({a.terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

Poly poly_neg(const Poly& a) { return poly_scale(a, Rat(-1)); }

Poly poly_sub(const Poly& a, const Poly& b, const MonomialOrder& ord) {
  return poly_add(a, poly_neg(b), ord);
}

Poly poly_scale(const Poly& a, const Rat& c) {
  Poly r(a.nvars_);
  if (c == 0) return r;
  r.terms_ = a.terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly poly_mul_term(const Poly& a, const Term& t, const MonomialOrder&) {
  Poly r(a.nvars_);
  if (t.coeff == 0) return r;
  r.terms_.reserve(a.terms_.size());
  for (const auto& s : a.terms_) r.terms_.push_back({exps_mul(s.mono, t.mono), s.coeff * t.coeff});
  return r;  // multiplying by a monomial preserves the term order
}

Poly poly_mul(const Poly& a, const Poly& b, const MonomialOrder& ord) {
  std::vector<Term> ts;
  ts.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) ts.push_back({exps_mul(s.mono, t.mono), s.coeff * t.coeff});
  return Poly::from_terms(a.nvars_, std::move(ts), ord);
}

Poly poly_mul_truncated(const Poly& a, const Poly& b, const MonomialOrder& ord,
                        std::size_t var, unsigned cap) {
  std::vector<Term> ts;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      if (s.mono[var] + t.mono[var] > cap) continue;
      ts.push_back({exps_mul(s.mono, t.mono), s.coeff * t.coeff});
    }
  return Poly::from_terms(a.nvars_, std::move(ts), ord);
}

Poly poly_pow(const Poly& a, unsigned k, const MonomialOrder& ord) {
  Poly r = Poly::constant(a.nvars(), Rat(1));
  Poly base = a;
  while (k > 0) {
    if (k & 1u) r = poly_mul(r, base, ord);
    k >>= 1u;
    if (k > 0) base = poly_mul(base, base, ord);
  }
  return r;
}

Poly poly_derivative(const Poly& f, std::size_t var, const MonomialOrder& ord) {
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    if (t.mono[var] == 0) continue;
    Exps e = t.mono;
    Rat c = t.coeff * Rat(static_cast<long>(e[var]));
    e[var] -= 1;
    ts.push_back({std::move(e), std::move(c)});
  }
  return Poly::from_terms(f.nvars(), std::move(ts), ord);
}

Poly poly_substitute(const Poly& f, const std::vector<Poly>& images,
                     const MonomialOrder& out_ord) {
  const std::size_t out_nvars = out_ord.nvars();
  Poly acc = Poly::zero(out_nvars);
  for (const auto& t : f.terms()) {
    Poly term = Poly::constant(out_nvars, t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      term = poly_mul(term, poly_pow(images[i], t.mono[i], out_ord), out_ord);
    }
    acc = poly_add(acc, term, out_ord);
  }
  return acc;
}

Poly poly_make_primitive(const Poly& f) {
  if (f.is_zero()) return f;
  Int den_lcm = 1;
  for (const auto& t : f.terms()) den_lcm = lcm(den_lcm, Int(t.coeff.get_den()));
  Int num_gcd = 0;
  for (const auto& t : f.terms()) num_gcd = gcd(num_gcd, Int(t.coeff.get_num() * (den_lcm / t.coeff.get_den())));
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (f.lead().coeff < 0) scale = -scale;
  return poly_scale(f, scale);
}

Poly poly_make_monic(const Poly& f) {
  if (f.is_zero()) return f;
  return poly_scale(f, Rat(1) / f.lead().coeff);
}

std::string poly_to_string(const Poly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    Rat c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = total_degree(t.mono) > 0;
    bool printed = false;
    if (c != 1 || !has_vars) {
      os << rat_to_string(c);
      printed = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (printed) os << "*";
      os << names[i];
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      printed = true;
    }
  }
  return os.str();
}

std::vector<std::string> ring_names_x(std::size_t nx) {
  std::vector<std::string> n;
  for (std::size_t i = 1; i <= nx; ++i) n.push_back("x" + std::to_string(i));
  return n;
}

std::vector<std::string> ring_names_xt(std::size_t nx) {
  auto n = ring_names_x(nx);
  n.push_back("t");
  return n;
}

std::vector<std::string> ring_names_jet(std::size_t nx, unsigned level, bool with_t) {
  std::vector<std::string> n;
  for (std::size_t i = 1; i <= nx; ++i)
    for (unsigned j = 0; j <= level; ++j)
      n.push_back("a" + std::to_string(i) + "_" + std::to_string(j));
  if (with_t) n.push_back("t");
  return n;
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  char take() {
    skip_ws();
    return s[pos++];
  }
  unsigned long take_nat() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw InvalidInput("expected number at position " + std::to_string(start) + " in polynomial");
    return std::stoul(s.substr(start, pos - start));
  }
};

}  // namespace

Poly parse_poly(const std::string& text, std::size_t nx, bool with_t, const MonomialOrder& ord) {
  const std::size_t nvars = nx + (with_t ? 1 : 0);
  if (ord.nvars() != nvars) throw InvalidInput("order arity mismatch in parse_poly");
  Lexer lx{text};
  std::vector<Term> terms;

  auto parse_factor = [&](Term& term) {
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long num = lx.take_nat();
      if (lx.peek() == '/') {
        lx.take();
        unsigned long den = lx.take_nat();
        if (den == 0) throw InvalidInput("zero denominator in polynomial coefficient");
        Rat q(static_cast<long>(num), static_cast<long>(den));
        q.canonicalize();
        term.coeff *= q;
      } else {
        term.coeff *= Rat(static_cast<long>(num));
      }
      return;
    }
    if (c == 'x' || c == 't') {
      lx.take();
      std::size_t var;
      if (c == 'x') {
        unsigned long idx = lx.take_nat();
        if (idx < 1 || idx > nx) throw InvalidInput("variable x" + std::to_string(idx) + " out of range (dimension " + std::to_string(nx) + ")");
        var = idx - 1;
      } else {
        if (!with_t) throw InvalidInput("variable t not allowed here");
        var = nx;
      }
      unsigned long e = 1;
      if (lx.peek() == '^') {
        lx.take();
        e = lx.take_nat();
      }
      term.mono[var] += static_cast<unsigned>(e);
      return;
    }
    throw InvalidInput(std::string("unexpected character '") + c + "' in polynomial");
  };

  bool first = true;
  while (!lx.eof()) {
    Rat sign(1);
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.take();
      if (c == '-') sign = -1;
    } else if (!first) {
      throw InvalidInput("expected '+' or '-' between polynomial terms");
    }
    first = false;
    Term term{Exps(nvars, 0), sign};
    parse_factor(term);
    while (lx.peek() == '*') {
      lx.take();
      parse_factor(term);
    }
    terms.push_back(std::move(term));
  }
  if (terms.empty()) throw InvalidInput("empty polynomial");
  return Poly::from_terms(nvars, std::move(terms), ord);
}

std::string poly_to_string_xt(const Poly& f, std::size_t nx) {
  // ascending t power, then descending grevlex on the x part
  std::vector<Term> ts = f.terms();
  std::sort(ts.begin(), ts.end(), [nx](const Term& a, const Term& b) {
    if (a.mono[nx] != b.mono[nx]) return a.mono[nx] < b.mono[nx];
    Exps ax(a.mono.begin(), a.mono.begin() + nx), bx(b.mono.begin(), b.mono.begin() + nx);
    return grevlex_cmp_all(ax, bx) > 0;
  });
  std::vector<std::string> names = ring_names_xt(nx);
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : ts) {
    Rat c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = total_degree(t.mono) > 0;
    bool printed = false;
    if (c != 1 || !has_vars) {
      os << rat_to_string(c);
      printed = true;
    }
    // t factor first, matching the usual display of twisted generators
    if (t.mono[nx] > 0) {
      if (printed) os << "*";
      os << "t";
      if (t.mono[nx] > 1) os << "^" << t.mono[nx];
      printed = true;
    }
    for (std::size_t i = 0; i < nx; ++i) {
      if (t.mono[i] == 0) continue;
      if (printed) os << "*";
      os << names[i];
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace qmld
