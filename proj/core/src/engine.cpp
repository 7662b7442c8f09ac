#include "qmld/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "qmld/errors.hpp"
#include "qmld/parallel.hpp"

namespace qmld {

namespace {

std::vector<MonomialMatrix> cyclic_subgroup_reps(const FiniteGroup& G) {
  // one generator per distinct cyclic subgroup, canonical choice
  std::map<std::set<MonomialMatrix>, MonomialMatrix> subgroups;
  for (const auto& g : G.elements) {
    std::set<MonomialMatrix> sub;
    MonomialMatrix p = g;
    while (true) {
      sub.insert(p);
      if (p.is_identity()) break;
      p = p.compose(g);
      if (sub.count(p)) break;
    }
    sub.insert(MonomialMatrix::identity(G.dim, G.ambient_order));
    auto it = subgroups.find(sub);
    if (it == subgroups.end() || g < it->second) subgroups[sub] = g;
  }
  std::vector<MonomialMatrix> reps;
  for (auto& [set_, rep] : subgroups) reps.push_back(rep);
  std::sort(reps.begin(), reps.end());
  return reps;
}

Rat age_of_rep(const std::vector<Rat>& rep) {
  Rat s(0);
  for (const auto& c : rep) s += c;
  return s;
}

// monomial x^u t^tw as an (x,t)-ring polynomial
Poly twisted_monomial_poly(const Exps& u, long tw, std::size_t nx) {
  Exps e(nx + 1, 0);
  for (std::size_t i = 0; i < nx; ++i) e[i] = u[i];
  e[nx] = static_cast<unsigned>(tw);
  return Poly::monomial(std::move(e), Rat(1));
}

long rep_pairing(const std::vector<Rat>& rep, const Exps& u) {
  Rat s(0);
  for (std::size_t i = 0; i < rep.size(); ++i)
    if (u[i] != 0) s += rep[i] * static_cast<long>(u[i]);
  if (!rat_is_integer(s)) throw NonInvariantIdeal("monomial not invariant under a sector");
  return s.get_num().get_si();
}

WeightVector rep_weights(const std::vector<Rat>& rep) {
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

}  // namespace

MldValue mld_reid_tai(const FiniteGroup& G, const MonomialRIdeal& a,
                      const EngineOptions& opts) {
  auto free = is_free_in_codim1(G);
  if (!free.free)
    throw NotFreeInCodim1("group has pseudo-reflection " + free.witness->to_string());

  bool has_best = false;
  MldValue best;
  WeightVector best_gamma;
  for (const auto& g : cyclic_subgroup_reps(G)) {
    WeightVector w;
    if (g.is_diagonal()) {
      w = diagonal_weights(g);
    } else {
      if (!a.empty())
        throw UnsupportedIdealBasisChange(
            "monomial ideal with a non-diagonal sector: the ideal is not monomial in the "
            "diagonalizing basis");
      w = weights(g);
    }
    MldValue v = mld_origin_toric({w}, G.dim, a, opts.toric);
    if (!has_best || (v.minus_infinity && !best.minus_infinity) ||
        (!v.minus_infinity && !best.minus_infinity && v.value < best.value)) {
      has_best = true;
      best = v;
      best_gamma = w;
    }
    if (best.minus_infinity) break;
  }
  best.witness.gamma = best_gamma;
  return best;
}

namespace {

struct HyperquotCell {
  std::size_t sector;
  std::vector<long> w;
  long b1;
};

}  // namespace

MldValue mld_hyperquot(const HyperquotientInstance& inst, const EngineOptions& opts) {
  const std::size_t n = inst.group.dim;
  auto free = is_free_in_codim1(inst.group);
  if (!free.free)
    throw NotFreeInCodim1("group has pseudo-reflection " + free.witness->to_string());

  if (inst.equations.empty()) {
    if (inst.group.is_diagonal()) {
      QuotFormulaOptions qopts;
      qopts.toric = opts.toric;
      MldValue v = formula_mld_quot(group_weights(inst.group), n, inst.ideal, qopts);
      v.witness.note += (v.witness.note.empty() ? "" : "; ") + std::string("quotient case");
      return v;
    }
    return mld_reid_tai(inst.group, inst.ideal, opts);
  }

  if (!inst.group.is_diagonal())
    throw UnsupportedIdealBasisChange(
        "hyperquotient sectors need a diagonal group (equations are not monomial in a "
        "diagonalizing basis)");

  // invariance of every equation under every element
  std::vector<WeightVector> sector_ws = group_weights(inst.group);
  for (const auto& f : inst.equations)
    for (const auto& w : sector_ws)
      if (!is_invariant(f, w)) throw NotInvariant("equation not invariant under the group");

  QuotientLattice lat = build_quotient_lattice(sector_ws, n);
  const std::vector<Exps> mx_gens = invariant_maximal_ideal_gens(lat);
  for (const auto& f : inst.ideal.factors)
    for (const auto& u : f.gens)
      for (const auto& rep : lat.coset_reps) rep_pairing(rep, u);  // invariance check

  // sectors in canonical order; schemes and Jacobians once each
  struct Sector {
    std::vector<Rat> rep;
    TwistedScheme scheme;
    std::vector<Poly> jac_gens;
    bool smooth = false;
  };
  std::vector<Sector> sectors;
  for (const auto& rep : lat.coset_reps) {
    Sector s;
    s.rep = rep;
    s.scheme = build_twisted_scheme(inst.equations, rep_weights(rep), n);
    IdealBasis jac = jacobian_ideal(s.scheme, opts.groebner);
    s.smooth = jac.is_unit(opts.groebner);
    s.jac_gens = jac.generators();
    sectors.push_back(std::move(s));
  }

  std::vector<HyperquotCell> cells;
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    std::vector<long> w(inst.ideal.factors.size(), 0);
    std::function<void(std::size_t)> expand = [&](std::size_t j) {
      if (j == w.size()) {
        if (sectors[si].smooth) {
          cells.push_back({si, w, 0});
        } else {
          for (long b1 = 0; b1 <= opts.b1_max; ++b1) cells.push_back({si, w, b1});
        }
        return;
      }
      for (long v = 0; v <= opts.w_max; ++v) {
        w[j] = v;
        expand(j + 1);
      }
    };
    expand(0);
  }

  struct CellResult {
    bool usable = false;
    Rat value;
    bool stabilized = false;
    bool smooth = false;
    bool budget_hit = false;
  };
  JetOptions jopts;
  jopts.m_max = opts.m_max;
  jopts.groebner = opts.groebner;

  auto eval_cell = [&](std::size_t idx) -> CellResult {
    const HyperquotCell& cell = cells[idx];
    const Sector& sec = sectors[cell.sector];
    CylinderSpec spec;
    spec.lift_depth = static_cast<unsigned>(cell.b1);
    {
      JetOrderConstraint mx;
      mx.bound = 1;
      mx.kind = JetOrderConstraint::Kind::AtLeast;
      for (const auto& u : mx_gens)
        mx.gens.push_back(twisted_monomial_poly(u, rep_pairing(sec.rep, u), n));
      spec.constraints.push_back(std::move(mx));
    }
    for (std::size_t j = 0; j < inst.ideal.factors.size(); ++j) {
      if (cell.w[j] == 0) continue;
      JetOrderConstraint c;
      c.bound = cell.w[j];
      c.kind = JetOrderConstraint::Kind::AtLeast;
      for (const auto& u : inst.ideal.factors[j].gens)
        c.gens.push_back(twisted_monomial_poly(u, rep_pairing(sec.rep, u), n));
      spec.constraints.push_back(std::move(c));
    }
    if (!sec.smooth) {
      JetOrderConstraint jc;
      jc.bound = cell.b1;
      jc.kind = JetOrderConstraint::Kind::Exact;
      jc.gens = sec.jac_gens;
      spec.constraints.push_back(std::move(jc));
    }
    CylinderEstimate est = cylinder_codim_estimate(sec.scheme, spec, jopts);
    CellResult r;
    r.budget_hit = est.budget_hit;
    if (est.empty || est.per_level.empty()) return r;
    r.usable = true;
    r.value = Rat(est.codim()) + age_of_rep(sec.rep) - Rat(cell.b1);
    for (std::size_t j = 0; j < inst.ideal.factors.size(); ++j)
      r.value -= inst.ideal.factors[j].exponent * cell.w[j];
    r.stabilized = est.stabilized;
    r.smooth = est.smooth_case;
    return r;
  };

  std::vector<CellResult> results =
      parallel_map<CellResult>(opts.jobs, cells.size(), eval_cell);

  bool has_best = false;
  Rat best_value;
  std::size_t best_idx = 0;
  bool any_budget_hit = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    any_budget_hit = any_budget_hit || results[i].budget_hit;
    if (!results[i].usable) continue;
    if (!has_best || results[i].value < best_value) {
      has_best = true;
      best_value = results[i].value;
      best_idx = i;
    }
  }
  if (!has_best) throw Error("no non-empty cylinder found within the explored window");

  bool all_smooth = std::all_of(sectors.begin(), sectors.end(),
                                [](const Sector& s) { return s.smooth; });
  MldStatus status;
  if (all_smooth && results[best_idx].stabilized && !any_budget_hit)
    status = MldStatus::Exact;
  else if (results[best_idx].stabilized && !any_budget_hit)
    status = MldStatus::StabilizedHeuristic;
  else
    status = MldStatus::LowerBound;

  MldValue out = MldValue::finite(best_value, status);
  out.witness.gamma = rep_weights(sectors[cells[best_idx].sector].rep);
  out.witness.contact_orders = cells[best_idx].w;
  out.witness.jacobian_order = cells[best_idx].b1;
  std::ostringstream note;
  note << "explored W=" << opts.w_max << " B1=" << opts.b1_max << " m_max=" << opts.m_max;
  out.witness.note = note.str();
  return out;
}

namespace {

bool is_monomial_poly(const Poly& f) { return f.terms().size() == 1; }

// ambient-side evaluation with a possibly non-monomial hypersurface factor,
// through jet loci on the smooth twisted ambient
MldValue mld_ambient_with_poly_factor(const FiniteGroup& G, const Poly& product,
                                      const MonomialRIdeal& a, const EngineOptions& opts) {
  const std::size_t n = G.dim;
  std::vector<WeightVector> sector_ws = group_weights(G);
  QuotientLattice lat = build_quotient_lattice(sector_ws, n);
  const std::vector<Exps> mx_gens = invariant_maximal_ideal_gens(lat);

  struct Cell {
    std::size_t rep;
    long wf;
    std::vector<long> w;
  };
  std::vector<Cell> cells;
  for (std::size_t ri = 0; ri < lat.coset_reps.size(); ++ri) {
    std::vector<long> w(a.factors.size(), 0);
    std::function<void(std::size_t)> expand = [&](std::size_t j) {
      if (j == w.size()) {
        for (long wf = 0; wf <= opts.w_max; ++wf) cells.push_back({ri, wf, w});
        return;
      }
      for (long v = 0; v <= opts.w_max; ++v) {
        w[j] = v;
        expand(j + 1);
      }
    };
    expand(0);
  }

  JetOptions jopts;
  jopts.m_max = opts.m_max;
  jopts.groebner = opts.groebner;

  auto eval = [&](std::size_t idx) -> std::optional<Rat> {
    const Cell& cell = cells[idx];
    const auto& rep = lat.coset_reps[cell.rep];
    TwistedScheme ambient;
    ambient.gamma = rep_weights(rep);
    ambient.ambient_dim = n;
    ambient.codim = 0;
    ambient.rel_dim = n;
    CylinderSpec spec;
    {
      JetOrderConstraint mx;
      mx.bound = 1;
      for (const auto& u : mx_gens)
        mx.gens.push_back(twisted_monomial_poly(u, rep_pairing(rep, u), n));
      spec.constraints.push_back(std::move(mx));
    }
    if (cell.wf > 0) {
      JetOrderConstraint c;
      c.bound = cell.wf;
      c.gens.push_back(twist_poly(product, ambient.gamma));
      spec.constraints.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < a.factors.size(); ++j) {
      if (cell.w[j] == 0) continue;
      JetOrderConstraint c;
      c.bound = cell.w[j];
      for (const auto& u : a.factors[j].gens)
        c.gens.push_back(twisted_monomial_poly(u, rep_pairing(rep, u), n));
      spec.constraints.push_back(std::move(c));
    }
    CylinderEstimate est = cylinder_codim_estimate(ambient, spec, jopts);
    if (est.empty || est.per_level.empty()) return std::nullopt;
    Rat value = Rat(est.codim()) + age_of_rep(rep) - Rat(cell.wf);
    for (std::size_t j = 0; j < a.factors.size(); ++j)
      value -= a.factors[j].exponent * cell.w[j];
    return value;
  };

  std::vector<std::optional<Rat>> vals =
      parallel_map<std::optional<Rat>>(opts.jobs, cells.size(), eval);
  bool has = false;
  Rat best;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i]) continue;
    if (!has || *vals[i] < best) {
      has = true;
      best = *vals[i];
      best_idx = i;
    }
  }
  if (!has) throw Error("ambient-side exploration found no cylinder");
  MldValue out = MldValue::finite(best, MldStatus::StabilizedHeuristic);
  out.witness.gamma = rep_weights(lat.coset_reps[cells[best_idx].rep]);
  out.witness.contact_orders = cells[best_idx].w;
  out.witness.contact_orders.insert(out.witness.contact_orders.begin(), cells[best_idx].wf);
  out.witness.note = "ambient jet exploration, W=" + std::to_string(opts.w_max);
  return out;
}

}  // namespace

VerificationReport verify_pia(const HyperquotientInstance& inst, const EngineOptions& opts) {
  if (inst.equations.empty()) throw InvalidInput("inversion of adjunction needs equations");
  const std::size_t n = inst.group.dim;
  const MonomialOrder xord = MonomialOrder::grevlex(n);

  VerificationReport rep;
  rep.lhs_label = "ambient (A, (f1..fc) a^delta)";
  rep.rhs_label = "subvariety (B, a O_B ^delta)";

  bool all_monomial = std::all_of(inst.equations.begin(), inst.equations.end(),
                                  [](const Poly& f) { return is_monomial_poly(f); });
  if (all_monomial) {
    MonomialRIdeal lhs_ideal = inst.ideal;
    MonomialIdealFactor hyp;
    hyp.exponent = Rat(1);
    Exps u(n, 0);
    for (const auto& f : inst.equations) u = exps_mul(u, Exps(f.lead().mono.begin(), f.lead().mono.begin() + n));
    hyp.gens.push_back(u);
    lhs_ideal.factors.push_back(hyp);
    if (!inst.group.is_diagonal())
      throw UnsupportedIdealBasisChange("ambient side needs a diagonal group");
    rep.lhs = mld_origin_toric(group_weights(inst.group), n, lhs_ideal, opts.toric);
    rep.trail = "ambient via toric lattice minimization";
  } else {
    Poly product = Poly::constant(n, Rat(1));
    for (const auto& f : inst.equations) product = poly_mul(product, f, xord);
    rep.lhs = mld_ambient_with_poly_factor(inst.group, product, inst.ideal, opts);
    rep.trail = "ambient via jet exploration of the twisted smooth space";
  }

  rep.rhs = mld_hyperquot(inst, opts);

  if (rep.lhs.same_extended_value(rep.rhs)) {
    bool both_exact =
        rep.lhs.status == MldStatus::Exact && rep.rhs.status == MldStatus::Exact;
    rep.verdict = both_exact ? VerificationReport::Verdict::Equal
                             : VerificationReport::Verdict::ConsistentWithinStatus;
  } else {
    rep.verdict = VerificationReport::Verdict::Mismatch;
  }
  return rep;
}

VerificationReport verify_consistency(const FiniteGroup& G, const MonomialRIdeal& a,
                                      const EngineOptions& opts) {
  if (!G.is_diagonal()) throw UnsupportedIdealBasisChange("consistency check needs a diagonal group");
  std::vector<WeightVector> ws = group_weights(G);

  VerificationReport rep;
  rep.lhs_label = "contact formula";
  rep.rhs_label = "toric minimization";
  rep.third_label = "cyclic reduction";
  QuotFormulaOptions qopts;
  qopts.toric = opts.toric;
  rep.lhs = formula_mld_quot(ws, G.dim, a, qopts);
  rep.rhs = mld_origin_toric(ws, G.dim, a, opts.toric);
  rep.third = mld_reid_tai(G, a, opts);

  bool equal_values = rep.lhs.same_extended_value(rep.rhs) &&
                      rep.rhs.same_extended_value(*rep.third);
  bool all_exact = rep.lhs.status == MldStatus::Exact &&
                   rep.rhs.status == MldStatus::Exact &&
                   rep.third->status == MldStatus::Exact;
  if (equal_values && all_exact)
    rep.verdict = VerificationReport::Verdict::Equal;
  else if (equal_values)
    rep.verdict = VerificationReport::Verdict::ConsistentWithinStatus;
  else
    rep.verdict = VerificationReport::Verdict::Mismatch;
  return rep;
}

AccReport acc_sample(unsigned n, long d_max, const EngineOptions& opts) {
  if (n > 3) throw CapExceeded("acc sampling limited to dimension 3");
  if (d_max > 200) throw CapExceeded("acc sampling limited to order 200");

  AccReport report;
  std::set<Rat> values;
  for (long d = 1; d <= d_max; ++d) {
    // ascending exponent tuples, one per coordinate permutation class
    std::vector<long> e(n, 0);
    std::function<void(std::size_t, long)> walk = [&](std::size_t i, long lo) {
      if (i == n) {
        long g = d;
        for (long x : e) {
          Int gg = gcd(Int(g), Int(x));
          g = gg.get_si();
        }
        if (g != 1) return;  // not a faithful order-d sector
        // free in codimension one: no power is a pseudo-reflection
        for (long k = 1; k < d; ++k) {
          std::size_t nonzero = 0;
          for (long x : e)
            if ((k * x) % d != 0) ++nonzero;
          if (nonzero == 1) return;
          if (nonzero == 0 && k < d) return;  // not faithful (caught above for k=1 gcd)
        }
        WeightVector w;
        w.order = d;
        w.exps.assign(e.begin(), e.end());
        MldValue v = mld_origin_toric({w}, n, MonomialRIdeal{}, opts.toric);
        ++report.instances;
        if (v.minus_infinity || v.value <= 0 || v.value > Rat(static_cast<long>(n)))
          report.values_in_range = false;
        auto oracle = mld_toric_brute_force({w}, n, MonomialRIdeal{}, Rat(static_cast<long>(n) + 1));
        if (!oracle || oracle->first != v.value) report.oracle_match = false;
        values.insert(v.value);
        return;
      }
      for (long x = lo; x < d; ++x) {
        e[i] = x;
        walk(i + 1, x);
      }
    };
    if (d == 1) {
      WeightVector w;
      w.order = 1;
      w.exps.assign(n, 0);
      MldValue v = mld_origin_toric({w}, n, MonomialRIdeal{}, opts.toric);
      ++report.instances;
      values.insert(v.value);
      continue;
    }
    walk(0, 0);
  }
  report.values.assign(values.begin(), values.end());
  return report;
}

}  // namespace qmld
