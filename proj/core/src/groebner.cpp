#include "qmld/groebner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmld/errors.hpp"

namespace qmld {

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const MonomialOrder& ord) {
  Poly h = f;
  std::vector<Term> remainder;
  while (!h.is_zero()) {
    bool divided = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (exps_divides(g.lead().mono, h.lead().mono)) {
        Term q{exps_div(h.lead().mono, g.lead().mono), h.lead().coeff / g.lead().coeff};
        h = poly_sub(h, poly_mul_term(g, q, ord), ord);
        divided = true;
        break;
      }
    }
    if (!divided) {
      remainder.push_back(h.lead());
      Poly rest(h.nvars());
      std::vector<Term> tail(h.terms().begin() + 1, h.terms().end());
      rest = Poly::from_terms(h.nvars(), std::move(tail), ord);
      h = std::move(rest);
    }
  }
  return Poly::from_terms(f.nvars(), std::move(remainder), ord);
}

namespace {

struct Pair {
  std::size_t i, j;
  Exps lcm;
  unsigned deg;
};

bool coprime(const Exps& a, const Exps& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0 && b[k] != 0) return false;
  return true;
}

Poly s_poly(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  Exps l = exps_lcm(f.lead().mono, g.lead().mono);
  Term tf{exps_div(l, f.lead().mono), Rat(1) / f.lead().coeff};
  Term tg{exps_div(l, g.lead().mono), Rat(1) / g.lead().coeff};
  return poly_sub(poly_mul_term(f, tf, ord), poly_mul_term(g, tg, ord), ord);
}

}  // namespace

std::vector<Poly> buchberger(std::vector<Poly> gens, const MonomialOrder& ord,
                             std::size_t budget) {
  std::vector<Poly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(poly_make_primitive(g));
  if (G.empty()) return {};

  auto pair_key = [](std::size_t i, std::size_t j) {
    return std::make_pair(std::min(i, j), std::max(i, j));
  };
  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::vector<Pair> queue;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    Exps l = exps_lcm(G[i].lead().mono, G[j].lead().mono);
    queue.push_back({i, j, l, total_degree(l)});
    pending.insert(pair_key(i, j));
  };
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

  std::size_t reductions = 0;
  while (!queue.empty()) {
    // normal selection: smallest lcm under the order
    std::size_t best = 0;
    for (std::size_t k = 1; k < queue.size(); ++k) {
      if (ord.compare(queue[k].lcm, queue[best].lcm) < 0) best = k;
    }
    Pair p = queue[best];
    queue.erase(queue.begin() + best);
    pending.erase(pair_key(p.i, p.j));

    // first criterion: coprime leading monomials
    if (coprime(G[p.i].lead().mono, G[p.j].lead().mono)) continue;
    // chain criterion
    bool chained = false;
    for (std::size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!exps_divides(G[k].lead().mono, p.lcm)) continue;
      if (!pending.count(pair_key(p.i, k)) && !pending.count(pair_key(p.j, k))) chained = true;
    }
    if (chained) continue;

    if (++reductions > budget)
      throw BudgetExceeded("Groebner budget of " + std::to_string(budget) +
                           " S-polynomial reductions exhausted");
    Poly r = normal_form(s_poly(G[p.i], G[p.j], ord), G, ord);
    if (r.is_zero()) continue;
    G.push_back(poly_make_primitive(r));
    for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
  }
  return G;
}

std::vector<Poly> reduce_basis(std::vector<Poly> gb, const MonomialOrder& ord) {
  // drop members whose lead is divisible by another member's lead
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gb.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!exps_divides(gb[j].lead().mono, gb[i].lead().mono)) continue;
      // break ties between equal leads by keeping the first
      if (gb[j].lead().mono == gb[i].lead().mono && j > i) continue;
      redundant = true;
    }
    if (!redundant) minimal.push_back(gb[i]);
  }
  // tail-reduce each against the others
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Poly> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Poly r = normal_form(minimal[i], others, ord);
      if (!(r == minimal[i])) {
        changed = true;
        if (r.is_zero()) {
          minimal.erase(minimal.begin() + i);
          break;
        }
        minimal[i] = r;
      }
    }
  }
  for (auto& g : minimal) g = poly_make_monic(g);
  std::sort(minimal.begin(), minimal.end(),
            [&ord](const Poly& a, const Poly& b) { return ord.compare(a.lead().mono, b.lead().mono) < 0; });
  return minimal;
}

IdealBasis::IdealBasis(std::size_t nvars, MonomialOrder ord, std::vector<Poly> gens)
    : nvars_(nvars), ord_(std::move(ord)) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    gens_.push_back(g.resorted(ord_));
  }
}

const std::vector<Poly>& IdealBasis::groebner(const GroebnerOptions& opts) const {
  if (gb_) return *gb_;
  const std::string key = cache_key();
  if (auto hit = GroebnerCache::instance().lookup(key, nvars_, ord_)) {
    gb_ = std::move(*hit);
    return *gb_;
  }
  gb_ = reduce_basis(buchberger(gens_, ord_, opts.budget), ord_);
  GroebnerCache::instance().store(key, nvars_, *gb_);
  return *gb_;
}

bool IdealBasis::is_unit(const GroebnerOptions& opts) const {
  const auto& gb = groebner(opts);
  return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

Poly IdealBasis::normal_form_of(const Poly& f, const GroebnerOptions& opts) const {
  return normal_form(f.resorted(ord_), groebner(opts), ord_);
}

bool IdealBasis::contains(const Poly& f, const GroebnerOptions& opts) const {
  return normal_form_of(f, opts).is_zero();
}

namespace {

std::string poly_serial(const Poly& f) {
  std::ostringstream os;
  for (const auto& t : f.terms()) {
    os << t.coeff.get_str() << ":";
    for (unsigned e : t.mono) os << e << ",";
    os << ";";
  }
  return os.str();
}

Poly poly_deserial(const std::string& s, std::size_t nvars, const MonomialOrder& ord) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t colon = s.find(':', pos);
    std::size_t semi = s.find(';', colon);
    Rat c;
    if (c.set_str(s.substr(pos, colon - pos), 10) != 0)
      throw InvalidInput("corrupt cache entry");
    c.canonicalize();
    Exps e;
    std::size_t p = colon + 1;
    while (p < semi) {
      std::size_t comma = s.find(',', p);
      e.push_back(static_cast<unsigned>(std::stoul(s.substr(p, comma - p))));
      p = comma + 1;
    }
    if (e.size() != nvars) throw InvalidInput("corrupt cache entry");
    terms.push_back({std::move(e), std::move(c)});
    pos = semi + 1;
  }
  return Poly::from_terms(nvars, std::move(terms), ord);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string IdealBasis::cache_key() const {
  std::vector<std::string> parts;
  for (const auto& g : gens_) parts.push_back(poly_serial(poly_make_primitive(g)));
  std::sort(parts.begin(), parts.end());
  std::ostringstream os;
  os << nvars_ << "|" << ord_.describe() << "|";
  for (const auto& p : parts) os << p << "|";
  std::ostringstream key;
  key << std::hex << fnv1a(os.str());
  return key.str();
}

long krull_dimension(const IdealBasis& I, const GroebnerOptions& opts) {
  const long n = static_cast<long>(I.nvars());
  if (I.is_zero_ideal()) return n;
  const auto& gb = I.groebner(opts);
  if (I.is_unit(opts)) return -1;
  if (I.nvars() > 64) throw BudgetExceeded("dimension search limited to 64 variables");

  // supports of the leading monomials; minimal ones only
  std::set<std::uint64_t> sup;
  for (const auto& g : gb) {
    std::uint64_t m = 0;
    for (std::size_t v = 0; v < I.nvars(); ++v)
      if (g.lead().mono[v] != 0) m |= (1ull << v);
    sup.insert(m);
  }
  std::vector<std::uint64_t> masks;
  for (auto m : sup) {
    bool has_subset = false;
    for (auto o : sup)
      if (o != m && (o & ~m) == 0) {
        has_subset = true;
        break;
      }
    if (!has_subset) masks.push_back(m);
  }

  long best = -1;
  // depth-first over variables, biggest independent set of the complement
  // hypergraph; prune on the cardinality bound
  std::function<void(std::size_t, std::uint64_t, long)> walk = [&](std::size_t v,
                                                                   std::uint64_t chosen,
                                                                   long count) {
    if (count + static_cast<long>(I.nvars() - v) <= best) return;
    if (v == I.nvars()) {
      best = std::max(best, count);
      return;
    }
    std::uint64_t with = chosen | (1ull << v);
    bool ok = true;
    for (auto m : masks)
      if ((m & ~with) == 0) {
        ok = false;
        break;
      }
    if (ok) walk(v + 1, with, count + 1);
    walk(v + 1, chosen, count);
  };
  walk(0, 0, 0);
  return best;
}

long krull_dimension_exhaustive(const IdealBasis& I, const GroebnerOptions& opts) {
  const std::size_t n = I.nvars();
  if (I.is_zero_ideal()) return static_cast<long>(n);
  if (I.is_unit(opts)) return -1;
  const auto& gb = I.groebner(opts);
  std::vector<std::uint64_t> masks;
  for (const auto& g : gb) {
    std::uint64_t m = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (g.lead().mono[v] != 0) m |= (1ull << v);
    masks.push_back(m);
  }
  long best = -1;
  for (std::uint64_t s = 0; s < (1ull << n); ++s) {
    bool ok = true;
    for (auto m : masks)
      if ((m & ~s) == 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    best = std::max<long>(best, __builtin_popcountll(s));
  }
  return best;
}

namespace {

Poly pad_var(const Poly& f, const MonomialOrder& big_ord) {
  std::vector<Term> ts;
  for (const auto& t : f.terms()) {
    Exps e = t.mono;
    e.push_back(0);
    ts.push_back({std::move(e), t.coeff});
  }
  return Poly::from_terms(f.nvars() + 1, std::move(ts), big_ord);
}

}  // namespace

IdealBasis saturate_by_poly(const IdealBasis& I, const Poly& g, const GroebnerOptions& opts) {
  const std::size_t n = I.nvars();
  if (g.is_zero()) throw InvalidInput("saturation by the zero polynomial");
  // elimination order with the auxiliary variable most significant
  std::vector<std::size_t> rest(n);
  std::iota(rest.begin(), rest.end(), 0);
  MonomialOrder big = MonomialOrder::block(n + 1, {{n}, rest});
  std::vector<Poly> gens;
  for (const auto& f : I.generators()) gens.push_back(pad_var(f, big));
  // y*g - 1
  std::vector<Term> yg;
  for (const auto& t : g.terms()) {
    Exps e = t.mono;
    e.push_back(1);
    yg.push_back({std::move(e), t.coeff});
  }
  yg.push_back({Exps(n + 1, 0), Rat(-1)});
  gens.push_back(Poly::from_terms(n + 1, std::move(yg), big));

  IdealBasis J(n + 1, big, std::move(gens));
  const auto& gb = J.groebner(opts);
  std::vector<Poly> contracted;
  for (const auto& f : gb) {
    bool uses_y = false;
    for (const auto& t : f.terms())
      if (t.mono[n] != 0) {
        uses_y = true;
        break;
      }
    if (uses_y) continue;
    std::vector<Term> ts;
    for (const auto& t : f.terms()) ts.push_back({Exps(t.mono.begin(), t.mono.begin() + n), t.coeff});
    contracted.push_back(Poly::from_terms(n, std::move(ts), I.order()));
  }
  return IdealBasis(n, I.order(), std::move(contracted));
}

IdealBasis saturate_by_var(const IdealBasis& I, std::size_t var, const GroebnerOptions& opts) {
  return saturate_by_poly(I, Poly::variable(I.nvars(), var), opts);
}

std::vector<Poly> eliminate_and_contract(const std::vector<Poly>& gens, std::size_t nvars,
                                         std::vector<std::size_t> eliminated,
                                         const MonomialOrder& out_ord, std::size_t budget) {
  std::sort(eliminated.begin(), eliminated.end());
  std::vector<bool> kill(nvars, false);
  for (std::size_t v : eliminated) kill[v] = true;
  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < nvars; ++v)
    if (!kill[v]) kept.push_back(v);
  if (out_ord.nvars() != kept.size()) throw InvalidInput("elimination arity mismatch");

  MonomialOrder big = MonomialOrder::block(nvars, {eliminated, kept});
  std::vector<Poly> sorted;
  for (const auto& g : gens)
    if (!g.is_zero()) sorted.push_back(g.resorted(big));
  std::vector<Poly> gb = reduce_basis(buchberger(std::move(sorted), big, budget), big);

  std::vector<Poly> out;
  for (const auto& f : gb) {
    bool uses_killed = false;
    for (const auto& t : f.terms())
      for (std::size_t v : eliminated)
        if (t.mono[v] != 0) {
          uses_killed = true;
          break;
        }
    if (uses_killed) continue;
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
      Exps e(kept.size());
      for (std::size_t k = 0; k < kept.size(); ++k) e[k] = t.mono[kept[k]];
      ts.push_back({std::move(e), t.coeff});
    }
    out.push_back(Poly::from_terms(kept.size(), std::move(ts), out_ord));
  }
  return out;
}

// ---------------------------------------------------------------------------
// cache

struct GroebnerCache::Impl {
  std::mutex mu;
  std::optional<std::string> dir;
  std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> mem;
  bool disk_loaded = false;

  std::string file_path() const { return *dir + "/groebner-cache-v1.json"; }

  void load_disk_locked() {
    if (disk_loaded || !dir) return;
    disk_loaded = true;
    std::ifstream in(file_path());
    if (!in) return;
    try {
      nlohmann::json j;
      in >> j;
      if (!j.is_object() || j.value("version", 0) != 1) return;
      for (auto& [key, val] : j.at("entries").items()) {
        std::vector<std::string> polys = val.at("basis").get<std::vector<std::string>>();
        mem[key] = {val.at("nvars").get<std::size_t>(), std::move(polys)};
      }
    } catch (...) {
      // unreadable cache files are ignored
    }
  }

  void save_disk_locked() {
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [key, val] : mem) {
      entries[key] = {{"nvars", val.first}, {"basis", val.second}};
    }
    nlohmann::json j = {{"version", 1}, {"entries", entries}};
    std::ofstream out(file_path());
    out << j.dump();
  }
};

GroebnerCache& GroebnerCache::instance() {
  static GroebnerCache c;
  return c;
}

GroebnerCache::Impl& GroebnerCache::impl() {
  static Impl i;
  return i;
}

void GroebnerCache::set_directory(const std::optional<std::string>& dir) {
  Impl& im = impl();
  std::lock_guard<std::mutex> lock(im.mu);
  im.dir = dir;
  im.disk_loaded = false;
}

void GroebnerCache::clear_memory() {
  Impl& im = impl();
  std::lock_guard<std::mutex> lock(im.mu);
  im.mem.clear();
  im.disk_loaded = false;
}

std::optional<std::vector<Poly>> GroebnerCache::lookup(const std::string& key,
                                                       std::size_t nvars,
                                                       const MonomialOrder& ord) {
  Impl& im = impl();
  std::lock_guard<std::mutex> lock(im.mu);
  im.load_disk_locked();
  auto it = im.mem.find(key);
  if (it == im.mem.end() || it->second.first != nvars) return std::nullopt;
  std::vector<Poly> out;
  for (const auto& s : it->second.second) out.push_back(poly_deserial(s, nvars, ord));
  return out;
}

void GroebnerCache::store(const std::string& key, std::size_t nvars,
                          const std::vector<Poly>& gb) {
  Impl& im = impl();
  std::lock_guard<std::mutex> lock(im.mu);
  im.load_disk_locked();
  std::vector<std::string> ser;
  for (const auto& g : gb) ser.push_back(poly_serial(g));
  im.mem[key] = {nvars, std::move(ser)};
  if (im.dir) im.save_disk_locked();
}

}  // namespace qmld
