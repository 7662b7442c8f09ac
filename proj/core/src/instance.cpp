#include "qmld/instance.hpp"

#include <fstream>

#include "qmld/errors.hpp"

namespace qmld {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

long get_long(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

Rat get_rat(const nlohmann::json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  fail(path, "expected an integer or a \"p/q\" string");
}

MonomialMatrix parse_generator(const nlohmann::json& g, std::size_t dim, long L,
                               const std::string& path) {
  MonomialMatrix m;
  m.dim = dim;
  m.ambient_order = L;
  if (g.contains("weights")) {
    const auto& w = g.at("weights");
    long d = get_long(w.at("d"), path + ".weights.d");
    if (d <= 0 || L % d != 0) fail(path + ".weights.d", "order must divide the ambient order");
    if (!w.contains("e") || !w.at("e").is_array() || w.at("e").size() != dim)
      fail(path + ".weights.e", "expected " + std::to_string(dim) + " exponents");
    std::vector<long> exps;
    for (std::size_t i = 0; i < dim; ++i) {
      long e = get_long(w.at("e").at(i), path + ".weights.e");
      if (e < 0 || e >= d) fail(path + ".weights.e", "exponents must lie in [0, d)");
      exps.push_back(e * (L / d));
    }
    return MonomialMatrix::diagonal(L, std::move(exps));
  }
  if (!g.contains("perm") || !g.at("perm").is_array() || g.at("perm").size() != dim)
    fail(path + ".perm", "expected a 1-based image list of length " + std::to_string(dim));
  if (!g.contains("exponents") || !g.at("exponents").is_array() || g.at("exponents").size() != dim)
    fail(path + ".exponents", "expected " + std::to_string(dim) + " scalar exponents");
  m.perm.resize(dim);
  m.scalars.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    long p = get_long(g.at("perm").at(i), path + ".perm");
    if (p < 1 || static_cast<std::size_t>(p) > dim) fail(path + ".perm", "image out of range");
    m.perm[i] = static_cast<std::size_t>(p - 1);
    long k = get_long(g.at("exponents").at(i), path + ".exponents");
    m.scalars[i] = ((k % L) + L) % L;
  }
  return m;
}

}  // namespace

InstanceFile parse_instance(const nlohmann::json& j) {
  InstanceFile f;
  if (!j.is_object()) fail("$", "instance must be a JSON object");
  if (!j.contains("dimension")) fail("dimension", "missing");
  long dim = get_long(j.at("dimension"), "dimension");
  if (dim < 1 || dim > 16) fail("dimension", "must lie in [1, 16]");
  f.dimension = static_cast<std::size_t>(dim);

  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (!o.is_object()) fail("options", "expected an object");
    if (o.contains("m_max")) f.options.m_max = static_cast<unsigned>(get_long(o.at("m_max"), "options.m_max"));
    if (o.contains("w_max")) f.options.w_max = get_long(o.at("w_max"), "options.w_max");
    if (o.contains("b1_max")) f.options.b1_max = get_long(o.at("b1_max"), "options.b1_max");
    if (o.contains("groebner_budget"))
      f.options.groebner.budget = static_cast<std::size_t>(get_long(o.at("groebner_budget"), "options.groebner_budget"));
    if (o.contains("group_cap"))
      f.group_cap = static_cast<std::size_t>(get_long(o.at("group_cap"), "options.group_cap"));
    if (o.contains("jobs")) f.options.jobs = static_cast<std::size_t>(get_long(o.at("jobs"), "options.jobs"));
  }

  long L = 1;
  if (j.contains("ambient_order")) {
    L = get_long(j.at("ambient_order"), "ambient_order");
    if (L < 1) fail("ambient_order", "must be positive");
  } else if (j.contains("group")) {
    // lcm of the orders appearing in diagonal shorthands
    const auto& g = j.at("group");
    if (g.contains("generators"))
      for (const auto& gen : g.at("generators"))
        if (gen.contains("weights")) L = lcm_long(L, gen.at("weights").at("d").get<long>());
  }
  f.ambient_order = L;

  std::vector<MonomialMatrix> gens;
  if (j.contains("group")) {
    const auto& g = j.at("group");
    if (!g.is_object() || !g.contains("generators") || !g.at("generators").is_array())
      fail("group.generators", "expected a list of generators");
    std::size_t idx = 0;
    for (const auto& gen : g.at("generators")) {
      gens.push_back(parse_generator(gen, f.dimension, L,
                                     "group.generators[" + std::to_string(idx) + "]"));
      ++idx;
    }
  }
  if (gens.empty()) gens.push_back(MonomialMatrix::identity(f.dimension, L));
  try {
    f.group = closure(gens, f.group_cap);
  } catch (const NotMonomial& e) {
    fail("group.generators", e.what());
  }

  if (j.contains("equations")) {
    if (!j.at("equations").is_array()) fail("equations", "expected a list of polynomial strings");
    const MonomialOrder xord = MonomialOrder::grevlex(f.dimension);
    std::size_t idx = 0;
    for (const auto& s : j.at("equations")) {
      if (!s.is_string()) fail("equations[" + std::to_string(idx) + "]", "expected a string");
      try {
        f.equations.push_back(parse_poly(s.get<std::string>(), f.dimension, false, xord));
      } catch (const InvalidInput& e) {
        fail("equations[" + std::to_string(idx) + "]", e.what());
      }
      ++idx;
    }
  }

  if (j.contains("ideal")) {
    if (!j.at("ideal").is_array()) fail("ideal", "expected a list of factors");
    std::size_t idx = 0;
    for (const auto& fac : j.at("ideal")) {
      const std::string path = "ideal[" + std::to_string(idx) + "]";
      MonomialIdealFactor factor;
      factor.exponent = get_rat(fac.at("exponent"), path + ".exponent");
      if (factor.exponent < 0) fail(path + ".exponent", "exponent must be non-negative");
      if (!fac.contains("monomials") || !fac.at("monomials").is_array() || fac.at("monomials").empty())
        fail(path + ".monomials", "expected a non-empty list of exponent vectors");
      for (const auto& mono : fac.at("monomials")) {
        if (!mono.is_array() || mono.size() != f.dimension)
          fail(path + ".monomials", "each exponent vector needs " + std::to_string(f.dimension) + " entries");
        Exps u;
        for (const auto& c : mono) {
          long e = get_long(c, path + ".monomials");
          if (e < 0) fail(path + ".monomials", "exponents must be non-negative");
          u.push_back(static_cast<unsigned>(e));
        }
        if (total_degree(u) == 0) fail(path + ".monomials", "the unit monomial is not allowed");
        factor.gens.push_back(std::move(u));
      }
      f.ideal.factors.push_back(std::move(factor));
      ++idx;
    }
  }
  return f;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return parse_instance(j);
}

std::string input_hash(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

nlohmann::json mld_value_to_json(const MldValue& v) {
  nlohmann::json w = nlohmann::json::object();
  const MldWitness& wit = v.witness;
  if (wit.gamma) {
    nlohmann::json g;
    g["d"] = wit.gamma->order;
    g["e"] = wit.gamma->exps;
    w["gamma"] = g;
  }
  if (!wit.lattice_point.empty()) {
    std::vector<std::string> pt;
    for (const auto& c : wit.lattice_point) pt.push_back(rat_to_string(c));
    w["point"] = pt;
  }
  if (!wit.ray.empty()) {
    std::vector<std::string> ray;
    for (const auto& c : wit.ray) ray.push_back(rat_to_string(c));
    w["ray"] = ray;
  }
  if (!wit.contact_orders.empty()) w["w"] = wit.contact_orders;
  if (wit.jacobian_order) w["b1"] = *wit.jacobian_order;
  if (!wit.note.empty()) w["note"] = wit.note;
  return nlohmann::json{{"value", v.value_string()}, {"status", to_string(v.status)}, {"witness", w}};
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["verdict"] = VerificationReport::verdict_name(r.verdict);
  j["lhs"] = mld_value_to_json(r.lhs);
  j["lhs_label"] = r.lhs_label;
  j["rhs"] = mld_value_to_json(r.rhs);
  j["rhs_label"] = r.rhs_label;
  if (r.third) {
    j["third"] = mld_value_to_json(*r.third);
    j["third_label"] = r.third_label;
  }
  if (!r.trail.empty()) j["trail"] = r.trail;
  return j;
}

}  // namespace qmld
