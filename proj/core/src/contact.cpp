#include "qmld/contact.hpp"

#include <algorithm>
#include <functional>

#include "qmld/errors.hpp"

namespace qmld {

namespace {

long constraint_order(const TwistedOrderConstraint& c, const std::vector<long>& m) {
  long best = 0;
  bool first = true;
  for (std::size_t k = 0; k < c.gens.size(); ++k) {
    long o = c.tweights[k];
    for (std::size_t i = 0; i < m.size(); ++i) o += static_cast<long>(c.gens[k][i]) * m[i];
    if (first || o < best) best = o;
    first = false;
  }
  return best;
}

bool satisfied(const TwistedOrderConstraint& c, const std::vector<long>& m) {
  long o = constraint_order(c, m);
  return c.kind == TwistedOrderConstraint::Kind::AtLeast ? o >= c.bound : o == c.bound;
}

}  // namespace

CodimValue contact_codim(const ContactSpec& spec) {
  const std::size_t n = spec.dim;
  // certified enumeration radius: a coordinate of a minimal feasible order
  // vector never exceeds the largest bound plus the largest generator entry
  long radius = 1;
  for (const auto& c : spec.constraints) {
    long entry = 0;
    for (const auto& u : c.gens)
      for (unsigned e : u) entry = std::max<long>(entry, e);
    radius = std::max(radius, c.bound + entry);
  }

  CodimValue best;
  best.infinite = true;
  std::vector<long> m(n, 0);
  std::function<void(std::size_t, long)> walk = [&](std::size_t i, long sum) {
    if (!best.infinite && sum > best.value) return;
    if (i == n) {
      for (const auto& c : spec.constraints)
        if (!satisfied(c, m)) return;
      if (best.infinite || sum < best.value ||
          (sum == best.value && std::lexicographical_compare(m.begin(), m.end(),
                                                             best.witness.begin(),
                                                             best.witness.end()))) {
        best.infinite = false;
        best.value = sum;
        best.witness = m;
      }
      return;
    }
    for (long v = 0; v <= radius; ++v) {
      m[i] = v;
      walk(i + 1, sum + v);
    }
    m[i] = 0;
  };
  walk(0, 0);
  return best;
}

namespace {

WeightVector rep_to_weights(const std::vector<Rat>& rep) {
  long d = 1;
  for (const auto& c : rep) d = lcm_long(d, c.get_den().get_si());
  WeightVector w;
  w.order = d;
  for (const auto& c : rep) {
    Rat e = c * d;
    e.canonicalize();
    w.exps.push_back(e.get_num().get_si());
  }
  return w;
}

long integer_pairing(const std::vector<Rat>& rep, const Exps& u) {
  Rat s(0);
  for (std::size_t i = 0; i < rep.size(); ++i)
    if (u[i] != 0) s += rep[i] * static_cast<long>(u[i]);
  if (!rat_is_integer(s)) throw NonInvariantIdeal("monomial not invariant under a sector");
  return s.get_num().get_si();
}

}  // namespace

MldValue formula_mld_quot(const std::vector<WeightVector>& weights, std::size_t dim,
                          const MonomialRIdeal& a, const QuotFormulaOptions& opts) {
  UnboundedCheck ub = is_unbounded_below(weights, dim, a);
  if (ub.unbounded) {
    MldValue m = MldValue::minus_inf();
    m.witness.ray = ub.ray;
    m.witness.note = "ray oracle";
    return m;
  }

  QuotientLattice lat = build_quotient_lattice(weights, dim);
  const std::vector<Exps> mx_gens = invariant_maximal_ideal_gens(lat);

  // derive the exploration window from the toric witness
  MldValue toric = mld_origin_toric(weights, dim, a, opts.toric);
  std::vector<long> window(a.factors.size(), opts.min_window);
  if (!toric.witness.lattice_point.empty()) {
    for (std::size_t j = 0; j < a.factors.size(); ++j) {
      Rat o = ord_monomial(toric.witness.lattice_point, a.factors[j].gens);
      long w_star = rat_floor(o).get_si();
      window[j] = std::max(opts.min_window, w_star + 1);
    }
  }

  bool has_best = false;
  Rat best_value;
  MldWitness best_witness;
  bool interior = true;  // best cell strictly inside the w window

  for (const auto& rep : lat.coset_reps) {
    Rat sector_age(0);
    for (const auto& c : rep) sector_age += c;

    ContactSpec base;
    base.dim = dim;
    TwistedOrderConstraint mx;
    mx.bound = 1;
    for (const auto& u : mx_gens) {
      mx.gens.push_back(u);
      mx.tweights.push_back(integer_pairing(rep, u));
    }
    base.constraints.push_back(std::move(mx));

    // iterate the product of per-factor windows
    std::vector<long> w(a.factors.size(), 0);
    std::function<void(std::size_t)> cells = [&](std::size_t j) {
      if (j == a.factors.size()) {
        ContactSpec spec = base;
        Rat shift(0);
        for (std::size_t k = 0; k < a.factors.size(); ++k) {
          TwistedOrderConstraint c;
          c.bound = w[k];
          for (const auto& u : a.factors[k].gens) {
            c.gens.push_back(u);
            c.tweights.push_back(integer_pairing(rep, u));
          }
          spec.constraints.push_back(std::move(c));
          shift += a.factors[k].exponent * w[k];
        }
        CodimValue codim = contact_codim(spec);
        if (codim.infinite) return;
        Rat value = Rat(codim.value) + sector_age - shift;
        if (!has_best || value < best_value) {
          has_best = true;
          best_value = value;
          best_witness = MldWitness{};
          best_witness.gamma = rep_to_weights(rep);
          best_witness.contact_orders = w;
          for (long mi : codim.witness) best_witness.lattice_point.push_back(Rat(mi));
          bool inside = true;
          for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] >= window[k]) inside = false;
          interior = inside || a.factors.empty();
        }
        return;
      }
      for (long v = 0; v <= window[j]; ++v) {
        w[j] = v;
        cells(j + 1);
      }
    };
    cells(0);
  }

  if (!has_best) throw Error("no admissible contact cell found");
  MldStatus status = MldStatus::Exact;
  std::string note;
  if (!interior || toric.status != MldStatus::Exact) {
    status = MldStatus::LowerBound;
    note = "w window";
    for (long wj : window) note += " " + std::to_string(wj);
    note += " not certified";
  }
  MldValue out = MldValue::finite(best_value, status);
  out.witness = best_witness;
  if (!note.empty()) out.witness.note = note;
  return out;
}

}  // namespace qmld
