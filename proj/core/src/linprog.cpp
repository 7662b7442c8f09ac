#include "qmld/linprog.hpp"

#include <algorithm>
#include <map>

#include "qmld/errors.hpp"

namespace qmld {

void LinearSystem::add_le(std::vector<Rat> a, Rat b) {
  rows.push_back(std::move(a));
  rhs.push_back(std::move(b));
}

void LinearSystem::add_ge(std::vector<Rat> a, const Rat& b) {
  for (auto& c : a) c = -c;
  rows.push_back(std::move(a));
  rhs.push_back(-b);
}

void LinearSystem::add_eq(const std::vector<Rat>& a, const Rat& b) {
  add_le(a, b);
  add_ge(a, b);
}

namespace {

struct Row {
  std::vector<Rat> a;
  Rat b;
};

// scale to a canonical integral representative; positive factors only
void normalize(Row& r) {
  Int den = 1;
  for (const auto& c : r.a) den = lcm(den, Int(c.get_den()));
  den = lcm(den, Int(r.b.get_den()));
  Int g = 0;
  auto fold = [&](const Rat& c) { g = gcd(g, Int(c.get_num() * (den / c.get_den()))); };
  for (const auto& c : r.a) fold(c);
  fold(r.b);
  if (g == 0) return;
  Rat s(den, g);
  s.canonicalize();
  for (auto& c : r.a) c *= s;
  r.b *= s;
}

constexpr std::size_t kRowCap = 200000;

struct Stage {
  std::size_t var;
  std::vector<Row> rows;  // rows the variable appeared in, pre-elimination
};

}  // namespace

LPResult lp_minimize(const LinearSystem& sys, const std::vector<Rat>& objective) {
  const std::size_t n = sys.nvars;
  // variables x_0..x_{n-1}, plus the objective variable z at index n
  std::vector<Row> rows;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    Row r;
    r.a = sys.rows[i];
    r.a.push_back(Rat(0));
    r.b = sys.rhs[i];
    rows.push_back(std::move(r));
  }
  {
    // c.x - z == 0
    Row up, dn;
    up.a = objective;
    up.a.push_back(Rat(-1));
    up.b = Rat(0);
    dn.a.reserve(n + 1);
    for (const auto& c : objective) dn.a.push_back(-c);
    dn.a.push_back(Rat(1));
    dn.b = Rat(0);
    rows.push_back(std::move(up));
    rows.push_back(std::move(dn));
  }

  std::vector<Stage> stages;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Row> zero, pos, neg;
    for (auto& r : rows) {
      if (r.a[v] == 0)
        zero.push_back(std::move(r));
      else if (r.a[v] > 0)
        pos.push_back(std::move(r));
      else
        neg.push_back(std::move(r));
    }
    Stage st;
    st.var = v;
    for (const auto& r : pos) st.rows.push_back(r);
    for (const auto& r : neg) st.rows.push_back(r);
    stages.push_back(std::move(st));

    std::map<std::vector<Rat>, Rat> dedup;
    auto push = [&](Row r) {
      normalize(r);
      bool all_zero = std::all_of(r.a.begin(), r.a.end(), [](const Rat& c) { return c == 0; });
      if (all_zero && r.b >= 0) return;  // trivially true
      auto it = dedup.find(r.a);
      if (it == dedup.end())
        dedup.emplace(std::move(r.a), std::move(r.b));
      else if (r.b < it->second)
        it->second = r.b;
    };
    for (auto& r : zero) push(std::move(r));
    for (const auto& p : pos)
      for (const auto& q : neg) {
        // eliminate v: p.a[v] > 0 > q.a[v]
        Rat alpha = p.a[v], beta = -q.a[v];
        Row r;
        r.a.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) r.a[i] = beta * p.a[i] + alpha * q.a[i];
        r.b = beta * p.b + alpha * q.b;
        push(std::move(r));
        if (dedup.size() > kRowCap)
          throw BudgetExceeded("Fourier-Motzkin elimination exceeded the row cap");
      }
    rows.clear();
    for (auto& [a, b] : dedup) rows.push_back({a, b});
  }

  // only z remains: rows are az <= b
  bool has_lower = false;
  Rat lower, upper;
  bool has_upper = false;
  for (const auto& r : rows) {
    const Rat& az = r.a[n];
    if (az == 0) {
      if (r.b < 0) return {LPResult::Status::Infeasible, Rat(0), {}};
      continue;
    }
    Rat bound = r.b / az;
    if (az > 0) {
      if (!has_upper || bound < upper) upper = bound;
      has_upper = true;
    } else {
      if (!has_lower || bound > lower) lower = bound;
      has_lower = true;
    }
  }
  if (has_lower && has_upper && lower > upper) return {LPResult::Status::Infeasible, Rat(0), {}};
  if (!has_lower) {
    // feasible (projections nonempty) but objective unbounded below
    return {LPResult::Status::Unbounded, Rat(0), {}};
  }

  // back-substitute a witness: fix z, then each eliminated variable in reverse
  std::vector<Rat> val(n + 1, Rat(0));
  std::vector<bool> fixed(n + 1, false);
  val[n] = lower;
  fixed[n] = true;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    const std::size_t v = it->var;
    bool hlo = false, hhi = false;
    Rat lo, hi;
    for (const auto& r : it->rows) {
      Rat rest = r.b;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == v) continue;
        if (r.a[i] != 0) rest -= r.a[i] * val[i];
      }
      Rat bound = rest / r.a[v];
      if (r.a[v] > 0) {
        if (!hhi || bound < hi) hi = bound;
        hhi = true;
      } else {
        if (!hlo || bound > lo) lo = bound;
        hlo = true;
      }
    }
    if (hlo)
      val[v] = lo;
    else if (hhi)
      val[v] = hi;
    else
      val[v] = Rat(0);
    fixed[v] = true;
  }
  std::vector<Rat> point(val.begin(), val.begin() + n);
  return {LPResult::Status::Optimal, lower, std::move(point)};
}

bool lp_feasible(const LinearSystem& sys, std::vector<Rat>* witness) {
  LPResult res = lp_minimize(sys, std::vector<Rat>(sys.nvars, Rat(0)));
  if (res.status == LPResult::Status::Infeasible) return false;
  if (witness) {
    if (res.status == LPResult::Status::Optimal) *witness = res.point;
    // zero objective over a feasible region is never unbounded
  }
  return true;
}

bool lp_descent_ray(const LinearSystem& sys, const std::vector<Rat>& objective,
                    std::vector<Rat>* ray) {
  LinearSystem cone(sys.nvars);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) cone.add_le(sys.rows[i], Rat(0));
  for (std::size_t v = 0; v < sys.nvars; ++v) {
    std::vector<Rat> unit(sys.nvars, Rat(0));
    unit[v] = 1;
    cone.add_le(unit, Rat(1));
    for (auto& c : unit) c = -c;
    cone.add_le(unit, Rat(1));
  }
  LPResult res = lp_minimize(cone, objective);
  if (res.status != LPResult::Status::Optimal || res.value >= 0) return false;
  if (ray) *ray = res.point;
  return true;
}

}  // namespace qmld
