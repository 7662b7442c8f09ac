#include "qmld/jets.hpp"

#include <algorithm>
#include <functional>

#include "qmld/errors.hpp"

namespace qmld {

MonomialOrder JetRing::default_order() const {
  // global grevlex: level-blocked orders reduce like lex here and blow up on
  // quadric jet ideals, and dimension only needs some global order
  return MonomialOrder::grevlex(nvars());
}

std::vector<std::size_t> JetRing::level_vars(unsigned j) const {
  std::vector<std::size_t> vs;
  for (std::size_t i = 0; i < nx; ++i) vs.push_back(var(i, j));
  return vs;
}

namespace {

// ring with the jet coefficients plus a trailing t used during expansion
struct ExpansionRing {
  JetRing jets;
  MonomialOrder ord;  // grevlex over nvars()+1, t last

  explicit ExpansionRing(const JetRing& r)
      : jets(r), ord(MonomialOrder::grevlex(r.nvars() + 1)) {}

  std::size_t tvar() const { return jets.nvars(); }

  Poly series(std::size_t i, unsigned cap) const {
    std::vector<Term> ts;
    for (unsigned j = 0; j <= std::min(cap, jets.level); ++j) {
      Exps e(jets.nvars() + 1, 0);
      e[jets.var(i, j)] = 1;
      e[tvar()] = j;
      ts.push_back({std::move(e), Rat(1)});
    }
    return Poly::from_terms(jets.nvars() + 1, std::move(ts), ord);
  }
};

}  // namespace

std::vector<Poly> jet_coefficients(const Poly& g, std::size_t nx, const JetRing& ring,
                                   unsigned cap) {
  ExpansionRing ex(ring);
  const std::size_t tv = ex.tvar();

  // powers of coordinate series, truncated, computed on demand
  std::vector<std::vector<Poly>> pow(nx);
  auto series_pow = [&](std::size_t i, unsigned k) -> const Poly& {
    auto& memo = pow[i];
    if (memo.empty()) {
      memo.push_back(Poly::constant(ex.jets.nvars() + 1, Rat(1)));
      memo.push_back(ex.series(i, cap));
    }
    while (memo.size() <= k)
      memo.push_back(poly_mul_truncated(memo.back(), memo[1], ex.ord, tv, cap));
    return memo[k];
  };

  Poly acc = Poly::zero(ex.jets.nvars() + 1);
  for (const auto& term : g.terms()) {
    unsigned tpow = term.mono[nx];  // t exponent of the twisted generator
    if (tpow > cap) continue;
    Poly prod = Poly::monomial([&] {
      Exps e(ex.jets.nvars() + 1, 0);
      e[tv] = tpow;
      return e;
    }(), term.coeff);
    for (std::size_t i = 0; i < nx; ++i) {
      if (term.mono[i] == 0) continue;
      prod = poly_mul_truncated(prod, series_pow(i, term.mono[i]), ex.ord, tv, cap);
    }
    acc = poly_add(acc, prod, ex.ord);
  }

  // split by t power and strip the t variable
  const MonomialOrder jet_ord = ring.default_order();
  std::vector<std::vector<Term>> buckets(cap + 1);
  for (const auto& t : acc.terms()) {
    unsigned j = t.mono[tv];
    if (j > cap) continue;
    Exps e(t.mono.begin(), t.mono.begin() + ex.jets.nvars());
    buckets[j].push_back({std::move(e), t.coeff});
  }
  std::vector<Poly> out;
  for (unsigned j = 0; j <= cap; ++j)
    out.push_back(Poly::from_terms(ring.nvars(), std::move(buckets[j]), jet_ord));
  return out;
}

JetIdeal jet_ideal(const TwistedScheme& S, unsigned level) {
  JetIdeal J;
  J.ring = JetRing{S.ambient_dim, level};
  std::vector<std::vector<Poly>> per_gen;
  for (const auto& g : S.generators)
    per_gen.push_back(jet_coefficients(g, S.ambient_dim, J.ring, level));
  for (unsigned j = 0; j <= level; ++j)
    for (const auto& coeffs : per_gen) J.gens.push_back(coeffs[j]);
  return J;
}

long jet_dimension(const TwistedScheme& S, unsigned level, const GroebnerOptions& opts) {
  JetIdeal J = jet_ideal(S, level);
  std::vector<Poly> gens;
  for (const auto& g : J.gens)
    if (!g.is_zero()) gens.push_back(g);
  IdealBasis I(J.ring.nvars(), J.ring.default_order(), std::move(gens));
  return krull_dimension(I, opts);
}

IdealBasis jacobian_ideal(const TwistedScheme& S, const GroebnerOptions& opts) {
  const std::size_t nx = S.ambient_dim;
  const MonomialOrder ord = S.ring_order();
  const std::size_t c = S.codim;
  if (c == 0) {
    std::vector<Poly> unit{Poly::constant(nx + 1, Rat(1))};
    return IdealBasis(nx + 1, ord, std::move(unit));
  }

  // partial derivatives with respect to the x variables
  std::vector<std::vector<Poly>> jac(c, std::vector<Poly>());
  for (std::size_t r = 0; r < c; ++r)
    for (std::size_t v = 0; v < nx; ++v)
      jac[r].push_back(poly_derivative(S.generators[r], v, ord));

  // determinant of a c x c submatrix by Laplace expansion on the first row
  std::function<Poly(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) -> Poly {
    if (rows.size() == 1) return jac[rows[0]][cols[0]];
    Poly acc = Poly::zero(nx + 1);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> sub_cols;
      for (std::size_t l = 0; l < cols.size(); ++l)
        if (l != k) sub_cols.push_back(cols[l]);
      Poly minor = det(sub_rows, sub_cols);
      Poly contrib = poly_mul(jac[rows[0]][cols[k]], minor, ord);
      acc = (k % 2 == 0) ? poly_add(acc, contrib, ord) : poly_sub(acc, contrib, ord);
    }
    return acc;
  };

  IdealBasis scheme_ideal(nx + 1, ord, S.generators);
  std::vector<std::size_t> rows(c);
  for (std::size_t r = 0; r < c; ++r) rows[r] = r;
  std::vector<Poly> minors;
  std::vector<std::size_t> cols;
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (cols.size() == c) {
      Poly m = det(rows, cols);
      if (!S.generators.empty()) m = scheme_ideal.normal_form_of(m, opts);
      if (!m.is_zero()) minors.push_back(m);
      return;
    }
    for (std::size_t v = from; v < nx; ++v) {
      cols.push_back(v);
      pick(v + 1);
      cols.pop_back();
    }
  };
  pick(0);
  return IdealBasis(nx + 1, ord, std::move(minors));
}

namespace {

struct ChartAtom {
  Poly inequation;  // jet-ring polynomial required nonzero on the chart
};

}  // namespace

CylinderEstimate cylinder_codim_estimate(const TwistedScheme& S, const CylinderSpec& spec,
                                         const JetOptions& opts) {
  CylinderEstimate est;
  est.smooth_case = spec.lift_depth == 0 && jacobian_ideal(S, opts.groebner).is_unit(opts.groebner);

  // cheap infeasibility: a polynomial all of whose terms carry t-exponent
  // beyond the bound has order beyond the bound along every arc
  for (const auto& c : spec.constraints) {
    if (c.kind == JetOrderConstraint::Kind::AtLeast) continue;
    bool reachable = false;
    for (const auto& g : c.gens) {
      long min_texp = -1;
      for (const auto& t : g.terms()) {
        long te = t.mono[S.ambient_dim];
        if (min_texp < 0 || te < min_texp) min_texp = te;
      }
      if (min_texp >= 0 && min_texp <= c.bound) reachable = true;
    }
    if (!reachable) {
      est.empty = true;
      return est;
    }
  }

  long max_bound = 1;
  for (const auto& c : spec.constraints) max_bound = std::max(max_bound, c.bound);
  unsigned m_lo = std::max<unsigned>(static_cast<unsigned>(max_bound), spec.lift_depth);
  m_lo = std::max(m_lo, 1u);

  const long n = static_cast<long>(S.rel_dim);
  for (unsigned m = m_lo; m <= std::max(opts.m_max, m_lo); ++m) {
    const unsigned big_level = m + spec.lift_depth;
    JetRing big{S.ambient_dim, big_level};
    JetRing kept{S.ambient_dim, m};

    std::vector<Poly> base;
    try {
      for (const auto& g : S.generators) {
        auto coeffs = jet_coefficients(g, S.ambient_dim, big, big_level);
        for (auto& c : coeffs)
          if (!c.is_zero()) base.push_back(std::move(c));
      }

      // vanishing parts and chart inequations
      std::vector<std::vector<ChartAtom>> chart_axes;  // one axis per Exact/AtMost
      for (const auto& c : spec.constraints) {
        std::vector<std::vector<Poly>> coeffs;
        unsigned cap = static_cast<unsigned>(c.bound);
        for (const auto& g : c.gens)
          coeffs.push_back(jet_coefficients(g, S.ambient_dim, big, cap));
        if (c.kind != JetOrderConstraint::Kind::AtMost) {
          for (const auto& cs : coeffs)
            for (long j = 0; j < c.bound; ++j)
              if (!cs[j].is_zero()) base.push_back(cs[j]);
        }
        if (c.kind == JetOrderConstraint::Kind::Exact) {
          std::vector<ChartAtom> axis;
          for (const auto& cs : coeffs)
            if (!cs[c.bound].is_zero()) axis.push_back({cs[c.bound]});
          chart_axes.push_back(std::move(axis));  // empty axis: no points
        } else if (c.kind == JetOrderConstraint::Kind::AtMost) {
          std::vector<ChartAtom> axis;
          for (const auto& cs : coeffs)
            for (long j = 0; j <= c.bound; ++j)
              if (!cs[j].is_zero()) axis.push_back({cs[j]});
          chart_axes.push_back(std::move(axis));
        }
      }

      // variables to eliminate: the lifted levels
      std::vector<std::size_t> lifted;
      for (unsigned j = m + 1; j <= big_level; ++j)
        for (std::size_t v : big.level_vars(j)) lifted.push_back(v);

      long level_dim = -1;
      bool any_chart = false;
      std::vector<std::size_t> pickv(chart_axes.size(), 0);
      std::function<void(std::size_t)> run_chart = [&](std::size_t axis) {
        if (axis == chart_axes.size()) {
          any_chart = true;
          // saturations folded into the elimination: adjoin one inverse
          // variable per chart inequation and eliminate it with the lifted
          // block
          std::size_t extra = chart_axes.size();
          std::size_t big_n = big.nvars() + extra;
          MonomialOrder pad_ord = MonomialOrder::grevlex(big_n);
          std::vector<Poly> gens;
          auto pad = [&](const Poly& f) {
            std::vector<Term> ts;
            for (const auto& t : f.terms()) {
              Exps e = t.mono;
              e.resize(big_n, 0);
              ts.push_back({std::move(e), t.coeff});
            }
            return Poly::from_terms(big_n, std::move(ts), pad_ord);
          };
          for (const auto& g : base) gens.push_back(pad(g));
          for (std::size_t ax = 0; ax < chart_axes.size(); ++ax) {
            const Poly& q = chart_axes[ax][pickv[ax]].inequation;
            std::vector<Term> ts;
            for (const auto& t : q.terms()) {
              Exps e = t.mono;
              e.resize(big_n, 0);
              e[big.nvars() + ax] = 1;
              ts.push_back({std::move(e), t.coeff});
            }
            ts.push_back({Exps(big_n, 0), Rat(-1)});
            gens.push_back(Poly::from_terms(big_n, std::move(ts), pad_ord));
          }
          std::vector<std::size_t> kill = lifted;
          for (std::size_t ax = 0; ax < extra; ++ax) kill.push_back(big.nvars() + ax);
          std::vector<Poly> contracted = eliminate_and_contract(
              gens, big_n, kill, kept.default_order(), opts.groebner.budget);
          IdealBasis I(kept.nvars(), kept.default_order(), std::move(contracted));
          level_dim = std::max(level_dim, krull_dimension(I, opts.groebner));
          return;
        }
        if (chart_axes[axis].empty()) return;  // no chart on this axis: empty
        for (std::size_t k = 0; k < chart_axes[axis].size(); ++k) {
          pickv[axis] = k;
          run_chart(axis + 1);
        }
      };
      bool has_empty_axis = std::any_of(chart_axes.begin(), chart_axes.end(),
                                        [](const auto& a) { return a.empty(); });
      if (has_empty_axis) {
        est.empty = true;
        est.per_level.push_back({m, -1});
        break;
      }
      run_chart(0);
      if (!any_chart && chart_axes.empty()) {
        // no Exact/AtMost constraints at all: single closed chart
        std::vector<Poly> contracted = eliminate_and_contract(
            base, big.nvars(), lifted, kept.default_order(), opts.groebner.budget);
        IdealBasis I(kept.nvars(), kept.default_order(), std::move(contracted));
        level_dim = krull_dimension(I, opts.groebner);
      }
      if (level_dim < 0) {
        est.empty = true;
        est.per_level.push_back({m, -1});
        break;
      }
      est.per_level.push_back({m, (static_cast<long>(m) + 1) * n - level_dim});
    } catch (const BudgetExceeded&) {
      est.budget_hit = true;
      break;
    }
  }

  if (est.empty) return est;
  if (est.per_level.empty()) {
    est.budget_hit = true;
    return est;
  }
  est.codim_lo = est.codim_hi = est.per_level.front().second;
  for (const auto& [lvl, cd] : est.per_level) {
    est.codim_lo = std::min(est.codim_lo, cd);
    est.codim_hi = std::max(est.codim_hi, cd);
  }
  const std::size_t k = est.per_level.size();
  if (k >= 3) {
    est.stabilized = est.per_level[k - 1].second == est.per_level[k - 2].second &&
                     est.per_level[k - 2].second == est.per_level[k - 3].second;
  } else if (est.smooth_case && k >= 1) {
    est.stabilized = est.codim_lo == est.codim_hi;
  }
  return est;
}

}  // namespace qmld
