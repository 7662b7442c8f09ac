#include "qmld/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qmld/errors.hpp"

namespace qmld {

MonomialMatrix MonomialMatrix::identity(std::size_t n, long L) {
  MonomialMatrix m;
  m.dim = n;
  m.ambient_order = L;
  m.perm.resize(n);
  std::iota(m.perm.begin(), m.perm.end(), 0);
  m.scalars.assign(n, 0);
  return m;
}

MonomialMatrix MonomialMatrix::diagonal(long L, std::vector<long> exponents) {
  MonomialMatrix m = identity(exponents.size(), L);
  for (std::size_t j = 0; j < exponents.size(); ++j)
    m.scalars[j] = ((exponents[j] % L) + L) % L;
  return m;
}

MonomialMatrix MonomialMatrix::compose(const MonomialMatrix& rhs) const {
  // (this*rhs)(e_j) = this(zeta^{rhs.k_j} e_{rhs.perm[j]})
  MonomialMatrix r;
  r.dim = dim;
  r.ambient_order = ambient_order;
  r.perm.resize(dim);
  r.scalars.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t mid = rhs.perm[j];
    r.perm[j] = perm[mid];
    r.scalars[j] = (rhs.scalars[j] + scalars[mid]) % ambient_order;
  }
  return r;
}

MonomialMatrix MonomialMatrix::inverse() const {
  MonomialMatrix r;
  r.dim = dim;
  r.ambient_order = ambient_order;
  r.perm.resize(dim);
  r.scalars.resize(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    r.perm[perm[j]] = j;
    r.scalars[perm[j]] = (ambient_order - scalars[j]) % ambient_order;
  }
  return r;
}

bool MonomialMatrix::is_identity() const {
  for (std::size_t j = 0; j < dim; ++j)
    if (perm[j] != j || scalars[j] != 0) return false;
  return true;
}

bool MonomialMatrix::is_diagonal() const {
  for (std::size_t j = 0; j < dim; ++j)
    if (perm[j] != j) return false;
  return true;
}

Rat MonomialMatrix::det_fraction() const {
  // det = sign(perm) * zeta_L^{sum scalars}, returned as its argument in [0,1)
  long s = 0;
  for (long k : scalars) s = (s + k) % ambient_order;
  std::vector<bool> seen(dim, false);
  int sign = 1;
  for (std::size_t j = 0; j < dim; ++j) {
    if (seen[j]) continue;
    std::size_t len = 0, cur = j;
    while (!seen[cur]) {
      seen[cur] = true;
      cur = perm[cur];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  Rat f(s, ambient_order);
  if (sign == -1) f += Rat(1, 2);
  f.canonicalize();
  f -= rat_floor(f);
  return f;
}

bool MonomialMatrix::operator<(const MonomialMatrix& o) const {
  if (perm != o.perm) return perm < o.perm;
  return scalars < o.scalars;
}

std::string MonomialMatrix::to_string() const {
  std::ostringstream os;
  os << "[perm:";
  for (std::size_t j = 0; j < dim; ++j) os << " " << perm[j] + 1;
  os << " | exp:";
  for (std::size_t j = 0; j < dim; ++j) os << " " << scalars[j];
  os << " mod " << ambient_order << "]";
  return os.str();
}

std::string WeightVector::to_string() const {
  std::ostringstream os;
  os << "(" << order << ";";
  for (std::size_t i = 0; i < exps.size(); ++i) os << (i ? "," : " ") << exps[i];
  os << ")";
  return os.str();
}

bool FiniteGroup::is_diagonal() const {
  for (const auto& g : elements)
    if (!g.is_diagonal()) return false;
  return true;
}

FiniteGroup closure(const std::vector<MonomialMatrix>& generators, std::size_t cap) {
  if (generators.empty()) throw NotMonomial("no generators given");
  const std::size_t n = generators.front().dim;
  const long L = generators.front().ambient_order;
  for (const auto& g : generators) {
    if (g.dim != n || g.ambient_order != L)
      throw NotMonomial("generators disagree on dimension or ambient order");
    if (g.perm.size() != n || g.scalars.size() != n)
      throw NotMonomial("malformed generator");
    std::vector<bool> hit(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (g.perm[j] >= n || hit[g.perm[j]])
        throw NotMonomial("generator image list is not a permutation");
      hit[g.perm[j]] = true;
      if (g.scalars[j] < 0 || g.scalars[j] >= L)
        throw NotMonomial("generator scalar exponent out of range");
    }
  }

  std::set<MonomialMatrix> seen;
  std::vector<MonomialMatrix> frontier;
  seen.insert(MonomialMatrix::identity(n, L));
  frontier.push_back(MonomialMatrix::identity(n, L));
  while (!frontier.empty()) {
    std::vector<MonomialMatrix> next;
    for (const auto& h : frontier) {
      for (const auto& g : generators) {
        MonomialMatrix p = g.compose(h);
        if (seen.insert(p).second) {
          if (seen.size() > cap)
            throw CapExceeded("group enumeration passed the cap of " + std::to_string(cap));
          next.push_back(std::move(p));
        }
      }
    }
    frontier = std::move(next);
  }

  FiniteGroup G;
  G.dim = n;
  G.ambient_order = L;
  G.generators = generators;
  G.elements.assign(seen.begin(), seen.end());
  return G;
}

WeightVector weights(const MonomialMatrix& g) {
  const long L = g.ambient_order;
  // eigenvalue exponents as fractions (s + L*r) / (L*l) per cycle
  std::vector<Rat> eig;
  std::vector<bool> seen(g.dim, false);
  for (std::size_t j = 0; j < g.dim; ++j) {
    if (seen[j]) continue;
    long s = 0;
    long len = 0;
    std::size_t cur = j;
    while (!seen[cur]) {
      seen[cur] = true;
      s = (s + g.scalars[cur]) % L;
      cur = g.perm[cur];
      ++len;
    }
    for (long r = 0; r < len; ++r) {
      Rat q(s + L * r, L * len);
      q.canonicalize();
      eig.push_back(q);
    }
  }
  long d = 1;
  for (const auto& q : eig) d = lcm_long(d, q.get_den().get_si());
  WeightVector w;
  w.order = d;
  for (const auto& q : eig) {
    Rat e = q * d;
    w.exps.push_back(e.get_num().get_si() % d);
  }
  std::sort(w.exps.begin(), w.exps.end());
  return w;
}

Rat age(const WeightVector& w) {
  long s = 0;
  for (long e : w.exps) s += e;
  Rat r(s, w.order);
  r.canonicalize();
  return r;
}

long element_order(const MonomialMatrix& g) { return weights(g).order; }

FreeInCodim1Result is_free_in_codim1(const FiniteGroup& G) {
  for (const auto& g : G.elements) {
    if (g.is_identity()) continue;
    WeightVector w = weights(g);
    std::size_t ones = 0;
    for (long e : w.exps)
      if (e == 0) ++ones;
    if (ones == G.dim - 1) return {false, g};
  }
  return {true, std::nullopt};
}

std::vector<std::vector<MonomialMatrix>> conjugacy_classes(const FiniteGroup& G) {
  std::set<MonomialMatrix> remaining(G.elements.begin(), G.elements.end());
  std::vector<std::vector<MonomialMatrix>> classes;
  while (!remaining.empty()) {
    MonomialMatrix rep = *remaining.begin();
    std::set<MonomialMatrix> cls;
    for (const auto& h : G.elements) cls.insert(h.compose(rep).compose(h.inverse()));
    std::vector<MonomialMatrix> sorted(cls.begin(), cls.end());
    for (const auto& c : sorted) remaining.erase(c);
    classes.push_back(std::move(sorted));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

WeightVector diagonal_weights(const MonomialMatrix& g) {
  if (!g.is_diagonal()) throw NotMonomial("diagonal_weights needs a diagonal matrix");
  long d = 1;
  for (long k : g.scalars) {
    Rat q(k, g.ambient_order);
    q.canonicalize();
    d = lcm_long(d, q.get_den().get_si());
  }
  WeightVector w;
  w.order = d;
  for (long k : g.scalars) {
    Rat e = Rat(k, g.ambient_order) * d;
    e.canonicalize();
    w.exps.push_back(e.get_num().get_si());
  }
  return w;
}

std::vector<WeightVector> group_weights(const FiniteGroup& G) {
  if (!G.is_diagonal()) throw NotMonomial("group_weights needs a diagonal group");
  std::vector<WeightVector> ws;
  ws.reserve(G.order());
  for (const auto& g : G.elements) ws.push_back(diagonal_weights(g));
  return ws;
}

}  // namespace qmld
