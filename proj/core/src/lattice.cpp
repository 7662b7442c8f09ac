#include "qmld/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qmld/errors.hpp"
#include "qmld/linprog.hpp"

namespace qmld {

std::string to_string(MldStatus s) {
  switch (s) {
    case MldStatus::Exact: return "exact";
    case MldStatus::LowerBound: return "lower_bound";
    case MldStatus::StabilizedHeuristic: return "stabilized_heuristic";
  }
  return "?";
}

QuotientLattice build_quotient_lattice(const std::vector<WeightVector>& weights,
                                       std::size_t dim) {
  QuotientLattice lat;
  lat.dim = dim;
  std::set<std::vector<Rat>> reps;
  std::vector<Rat> zero(dim, Rat(0));
  reps.insert(zero);

  auto reduce = [&](std::vector<Rat> v) {
    for (auto& c : v) {
      c -= rat_floor(c);
      c.canonicalize();
    }
    return v;
  };

  std::vector<std::vector<Rat>> frontier{zero};
  std::vector<std::vector<Rat>> gens;
  for (const auto& w : weights) {
    if (w.exps.size() != dim) throw InvalidInput("weight vector arity mismatch");
    std::vector<Rat> g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      g[i] = Rat(w.exps[i], w.order);
      g[i].canonicalize();
    }
    gens.push_back(reduce(std::move(g)));
  }
  while (!frontier.empty()) {
    std::vector<std::vector<Rat>> next;
    for (const auto& r : frontier)
      for (const auto& g : gens) {
        std::vector<Rat> s(dim);
        for (std::size_t i = 0; i < dim; ++i) s[i] = r[i] + g[i];
        s = reduce(std::move(s));
        if (reps.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  lat.coset_reps.assign(reps.begin(), reps.end());
  return lat;
}

Rat ord_monomial(const std::vector<Rat>& v, const std::vector<Exps>& gens) {
  bool first = true;
  Rat best;
  for (const auto& u : gens) {
    Rat s(0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (u[i] != 0) s += v[i] * static_cast<long>(u[i]);
    if (first || s < best) best = s;
    first = false;
  }
  return best;
}

Rat log_discrepancy(const std::vector<Rat>& v, const MonomialRIdeal& a) {
  Rat s(0);
  for (const auto& c : v) s += c;
  for (const auto& f : a.factors) s -= f.exponent * ord_monomial(v, f.gens);
  return s;
}

namespace {

void check_ideal_invariance(const QuotientLattice& lat, const MonomialRIdeal& a) {
  for (const auto& f : a.factors)
    for (const auto& u : f.gens)
      for (const auto& r : lat.coset_reps) {
        Rat s(0);
        for (std::size_t i = 0; i < lat.dim; ++i)
          if (u[i] != 0) s += r[i] * static_cast<long>(u[i]);
        if (!rat_is_integer(s))
          throw NonInvariantIdeal("ideal generator is not invariant under the group");
      }
}

void check_free_in_codim1(const QuotientLattice& lat) {
  // a sector whose weights vanish in all but one coordinate fixes a
  // hyperplane pointwise (in dimension one: any nontrivial sector)
  for (const auto& r : lat.coset_reps) {
    std::size_t nonzero = 0;
    for (const auto& c : r)
      if (c != 0) ++nonzero;
    if (nonzero == 1)
      throw NotFreeInCodim1("the group contains a pseudo-reflection sector");
  }
}

// all choices of one generator per factor
std::vector<std::vector<std::size_t>> piece_choices(const MonomialRIdeal& a) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (const auto& f : a.factors) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& pre : out)
      for (std::size_t k = 0; k < f.gens.size(); ++k) {
        auto c = pre;
        c.push_back(k);
        next.push_back(std::move(c));
      }
    out = std::move(next);
  }
  return out;
}

// linear objective of a piece: coefficient vector of sum v_i - sum delta_j <v, u_choice>
std::vector<Rat> piece_objective(std::size_t dim, const MonomialRIdeal& a,
                                 const std::vector<std::size_t>& choice) {
  std::vector<Rat> c(dim, Rat(1));
  for (std::size_t j = 0; j < a.factors.size(); ++j) {
    const auto& u = a.factors[j].gens[choice[j]];
    for (std::size_t i = 0; i < dim; ++i)
      if (u[i] != 0) c[i] -= a.factors[j].exponent * static_cast<long>(u[i]);
  }
  return c;
}

// piece inequalities <v, u_choice - u'> <= 0 for the other generators
void add_piece_rows(LinearSystem& sys, std::size_t dim, const MonomialRIdeal& a,
                    const std::vector<std::size_t>& choice) {
  for (std::size_t j = 0; j < a.factors.size(); ++j) {
    const auto& pick = a.factors[j].gens[choice[j]];
    for (std::size_t k = 0; k < a.factors[j].gens.size(); ++k) {
      if (k == choice[j]) continue;
      const auto& other = a.factors[j].gens[k];
      std::vector<Rat> row(dim);
      for (std::size_t i = 0; i < dim; ++i)
        row[i] = Rat(static_cast<long>(pick[i]) - static_cast<long>(other[i]));
      sys.add_le(std::move(row), Rat(0));
    }
  }
}

std::vector<Rat> scale_to_integer_vector(const std::vector<Rat>& v) {
  Int den = 1;
  for (const auto& c : v) den = lcm(den, Int(c.get_den()));
  std::vector<Rat> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * Rat(den);
    out[i].canonicalize();
  }
  return out;
}

bool lex_less(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

std::vector<Exps> invariant_maximal_ideal_gens(const QuotientLattice& lat, std::size_t cap) {
  const std::size_t n = lat.dim;
  // minimal invariant pure powers: s_i = lcm of denominators of the i-th
  // coordinates of the representatives
  std::vector<long> s(n, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& r : lat.coset_reps) s[i] = lcm_long(s[i], r[i].get_den().get_si());

  auto invariant = [&](const Exps& u) {
    for (const auto& r : lat.coset_reps) {
      Rat acc(0);
      for (std::size_t i = 0; i < n; ++i)
        if (u[i] != 0) acc += r[i] * static_cast<long>(u[i]);
      if (!rat_is_integer(acc)) return false;
    }
    return true;
  };

  // mixed minimal generators have u_i < s_i in every coordinate
  std::vector<Exps> found;
  for (std::size_t i = 0; i < n; ++i) {
    Exps u(n, 0);
    u[i] = static_cast<unsigned>(s[i]);
    found.push_back(std::move(u));
  }
  std::size_t box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    box *= static_cast<std::size_t>(s[i]);
    if (box > cap) throw BudgetExceeded("invariant monomial search box too large");
  }
  Exps u(n, 0);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == n) {
      if (total_degree(u) == 0) return;
      if (invariant(u)) found.push_back(u);
      return;
    }
    for (long e = 0; e < s[i]; ++e) {
      u[i] = static_cast<unsigned>(e);
      walk(i + 1);
    }
    u[i] = 0;
  };
  walk(0);

  // keep the minimal ones under componentwise divisibility
  std::sort(found.begin(), found.end(),
            [](const Exps& a, const Exps& b) { return total_degree(a) < total_degree(b); });
  std::vector<Exps> minimal;
  for (const auto& cand : found) {
    bool divisible = false;
    for (const auto& m : minimal)
      if (exps_divides(m, cand)) {
        divisible = true;
        break;
      }
    if (!divisible) minimal.push_back(cand);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

UnboundedCheck is_unbounded_below(const std::vector<WeightVector>& weights,
                                  std::size_t dim, const MonomialRIdeal& a) {
  QuotientLattice lat = build_quotient_lattice(weights, dim);
  check_free_in_codim1(lat);
  check_ideal_invariance(lat, a);
  if (a.empty()) return {false, {}};

  for (const auto& choice : piece_choices(a)) {
    LinearSystem sys(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<Rat> unit(dim, Rat(0));
      unit[i] = 1;
      sys.add_ge(std::move(unit), Rat(0));
    }
    add_piece_rows(sys, dim, a, choice);
    sys.add_eq(std::vector<Rat>(dim, Rat(1)), Rat(1));  // the simplex slice
    LPResult res = lp_minimize(sys, piece_objective(dim, a, choice));
    if (res.status == LPResult::Status::Optimal && res.value < 0) {
      return {true, scale_to_integer_vector(res.point)};
    }
  }
  return {false, {}};
}

namespace {

struct Incumbent {
  bool has = false;
  Rat value;
  std::vector<Rat> point;

  void offer(const Rat& v, const std::vector<Rat>& p) {
    if (!has || v < value || (v == value && lex_less(p, point))) {
      has = true;
      value = v;
      point = p;
    }
  }
};

// enumerate interior lattice points with coordinate sum <= bound
void enumerate_region(const QuotientLattice& lat, const Rat& bound,
                      const std::function<void(const std::vector<Rat>&)>& visit) {
  const std::size_t n = lat.dim;
  for (const auto& rep : lat.coset_reps) {
    std::vector<Rat> v(n);
    std::function<void(std::size_t, Rat)> walk = [&](std::size_t i, Rat used) {
      if (i == n) {
        visit(v);
        return;
      }
      long z0 = rep[i] == 0 ? 1 : 0;  // interior floor
      for (long z = z0;; ++z) {
        Rat c = rep[i] + z;
        if (used + c > bound) break;
        v[i] = c;
        walk(i + 1, used + c);
      }
    };
    walk(0, Rat(0));
  }
}

}  // namespace

MldValue mld_origin_toric(const std::vector<WeightVector>& weights, std::size_t dim,
                          const MonomialRIdeal& a, const ToricOptions& opts) {
  QuotientLattice lat = build_quotient_lattice(weights, dim);
  check_free_in_codim1(lat);
  check_ideal_invariance(lat, a);

  UnboundedCheck ub = is_unbounded_below(weights, dim, a);
  if (ub.unbounded) {
    MldValue m = MldValue::minus_inf();
    m.witness.ray = ub.ray;
    m.status = MldStatus::Exact;
    return m;
  }

  Incumbent inc;
  // candidate points in the half-open unit box, zeros lifted to 1
  for (const auto& rep : lat.coset_reps) {
    std::vector<Rat> v = rep;
    for (auto& c : v)
      if (c == 0) c = 1;
    inc.offer(log_discrepancy(v, a), v);
  }

  // when no ideal factor can outweigh a coordinate decrement, some optimum
  // lies in the unit box and the candidates are already exhaustive
  bool box_suffices = true;
  for (std::size_t i = 0; i < dim; ++i) {
    Rat gain(0);
    for (const auto& f : a.factors) {
      unsigned mx = 0;
      for (const auto& u : f.gens) mx = std::max(mx, u[i]);
      gain += f.exponent * static_cast<long>(mx);
    }
    if (gain > 1) box_suffices = false;
  }
  if (box_suffices) {
    MldValue m = MldValue::finite(inc.value, MldStatus::Exact);
    m.witness.lattice_point = inc.point;
    return m;
  }

  // enumerate a ball and certify the tail per (representative, piece) by LP
  Rat bound = inc.value + 1;
  if (bound < Rat(static_cast<long>(dim))) bound = Rat(static_cast<long>(dim));
  const auto choices = piece_choices(a);
  for (int round = 0; round < opts.certificate_rounds; ++round) {
    enumerate_region(lat, bound, [&](const std::vector<Rat>& v) {
      inc.offer(log_discrepancy(v, a), v);
    });

    bool certified = true;
    for (const auto& rep : lat.coset_reps) {
      for (const auto& choice : choices) {
        LinearSystem sys(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          std::vector<Rat> unit(dim, Rat(0));
          unit[i] = 1;
          sys.add_ge(std::move(unit), rep[i] == 0 ? Rat(1) : rep[i]);
        }
        add_piece_rows(sys, dim, a, choice);
        sys.add_ge(std::vector<Rat>(dim, Rat(1)), bound);  // the tail region
        LPResult res = lp_minimize(sys, piece_objective(dim, a, choice));
        if (res.status == LPResult::Status::Infeasible) continue;
        if (res.status != LPResult::Status::Optimal || res.value < inc.value) {
          certified = false;
          break;
        }
      }
      if (!certified) break;
    }
    if (certified) {
      MldValue m = MldValue::finite(inc.value, MldStatus::Exact);
      m.witness.lattice_point = inc.point;
      return m;
    }
    bound *= 2;
  }

  MldValue m = MldValue::finite(inc.value, MldStatus::LowerBound);
  m.witness.lattice_point = inc.point;
  m.witness.note = "tail not certified within radius " + rat_to_string(bound);
  return m;
}

std::optional<std::pair<Rat, std::vector<Rat>>> mld_toric_brute_force(
    const std::vector<WeightVector>& weights, std::size_t dim, const MonomialRIdeal& a,
    const Rat& sum_bound) {
  QuotientLattice lat = build_quotient_lattice(weights, dim);
  std::optional<std::pair<Rat, std::vector<Rat>>> best;
  enumerate_region(lat, sum_bound, [&](const std::vector<Rat>& v) {
    Rat val = log_discrepancy(v, a);
    if (!best || val < best->first || (val == best->first && lex_less(v, best->second)))
      best = {val, v};
  });
  return best;
}

}  // namespace qmld
