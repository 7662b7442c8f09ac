// Command-line front end: parses instance files, dispatches the mld
// computations and verification harnesses, emits machine-readable results.
//
// Exit codes: 0 success, 1 invalid input, 2 budget exhaustion (a partial
// result is still emitted).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmld/engine.hpp"
#include "qmld/errors.hpp"
#include "qmld/instance.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string format = "json";
  bool no_cache = false;
  std::optional<long> max_level, max_w, max_b1, groebner_budget, jobs;
  std::optional<long> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_flag("--no-cache", flags.no_cache, "Disable the Groebner cache");
  cmd->add_option("--max-level", flags.max_level, "Jet level cap");
  cmd->add_option("--max-w", flags.max_w, "Contact order window per ideal factor");
  cmd->add_option("--max-b1", flags.max_b1, "Jacobian order window");
  cmd->add_option("--groebner-budget", flags.groebner_budget, "S-polynomial reduction cap");
  cmd->add_option("--jobs", flags.jobs, "Parallelism degree");
  cmd->add_option("--seed", flags.seed, "Seed recorded in the output");
}

void configure_cache(const CommonFlags& flags) {
  if (flags.no_cache) {
    qmld::GroebnerCache::instance().set_directory(std::nullopt);
    return;
  }
  if (const char* dir = std::getenv("QMLD_CACHE_DIR")) {
    qmld::GroebnerCache::instance().set_directory(std::string(dir));
  } else if (const char* home = std::getenv("HOME")) {
    qmld::GroebnerCache::instance().set_directory(std::string(home) + "/.cache/qmld");
  }
}

void apply_flags(qmld::EngineOptions& o, const CommonFlags& flags) {
  if (flags.max_level) o.m_max = static_cast<unsigned>(*flags.max_level);
  if (flags.max_w) o.w_max = *flags.max_w;
  if (flags.max_b1) o.b1_max = *flags.max_b1;
  if (flags.groebner_budget) o.groebner.budget = static_cast<std::size_t>(*flags.groebner_budget);
  if (flags.jobs) o.jobs = static_cast<std::size_t>(*flags.jobs);
}

void print_table(std::ostream& os, const json& j, const std::string& prefix = "") {
  for (const auto& [key, val] : j.items()) {
    if (val.is_object()) {
      print_table(os, val, prefix + key + ".");
    } else {
      os << prefix << key << "\t" << (val.is_string() ? val.get<std::string>() : val.dump())
         << "\n";
    }
  }
}

int emit(const json& record, const CommonFlags& flags, int code) {
  if (flags.format == "table")
    print_table(std::cout, record);
  else
    std::cout << record.dump() << "\n";
  return code;
}

json base_record(const std::string& command, const CommonFlags& flags,
                 const std::optional<json>& input,
                 std::chrono::steady_clock::time_point start) {
  json r;
  r["command"] = command;
  r["version"] = qmld::kToolVersion;
  if (input) r["input_hash"] = qmld::input_hash(*input);
  if (flags.seed) r["seed"] = *flags.seed;
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  r["timing_ms"] = ms;
  return r;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qmld::InvalidInput("cannot open instance file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw qmld::InvalidInput(path + ": " + e.what());
  }
  return j;
}

bool budget_limited(const qmld::MldValue& v) {
  return v.status == qmld::MldStatus::LowerBound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact minimal log discrepancies of quotient and hyperquotient singularities"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string file;
  std::string mode = "quot";
  std::string which = "consistency";
  long acc_dim = 2;
  long acc_max_order = 10;

  CLI::App* group_cmd = app.add_subcommand("group", "Enumerate a group and its invariants");
  group_cmd->add_option("file", file, "Instance file")->required();
  add_common(group_cmd, flags);

  CLI::App* mld_cmd = app.add_subcommand("mld", "Compute an mld at the origin");
  mld_cmd->add_option("file", file, "Instance file")->required();
  mld_cmd->add_option("--mode", mode, "quot | hyperquot | reid-tai")
      ->check(CLI::IsMember({"quot", "hyperquot", "reid-tai"}));
  add_common(mld_cmd, flags);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification harness");
  verify_cmd->add_option("file", file, "Instance file (pia and consistency)");
  verify_cmd->add_option("--which", which, "pia | consistency | acc")
      ->check(CLI::IsMember({"pia", "consistency", "acc"}));
  verify_cmd->add_option("--dim", acc_dim, "Dimension for acc sampling");
  verify_cmd->add_option("--max-order", acc_max_order, "Order bound for acc sampling");
  add_common(verify_cmd, flags);

  CLI11_PARSE(app, argc, argv);
  configure_cache(flags);
  const auto start = std::chrono::steady_clock::now();

  try {
    if (group_cmd->parsed()) {
      json input = load_json_file(file);
      qmld::InstanceFile inst = qmld::parse_instance(input);
      json r = base_record("group", flags, input, start);
      r["order"] = inst.group.order();
      r["conjugacy_classes"] = qmld::conjugacy_classes(inst.group).size();
      std::vector<std::string> ages;
      for (const auto& g : inst.group.elements)
        ages.push_back(qmld::rat_to_string(qmld::age(qmld::weights(g))));
      r["ages"] = ages;
      auto free = qmld::is_free_in_codim1(inst.group);
      r["free_in_codim1"] = free.free;
      if (!free.free) r["pseudo_reflection"] = free.witness->to_string();
      return emit(r, flags, 0);
    }

    if (mld_cmd->parsed()) {
      json input = load_json_file(file);
      qmld::InstanceFile inst = qmld::parse_instance(input);
      apply_flags(inst.options, flags);
      qmld::MldValue v;
      if (mode == "quot") {
        if (!inst.group.is_diagonal())
          throw qmld::UnsupportedIdealBasisChange("mode quot needs a diagonal group");
        qmld::QuotFormulaOptions qopts;
        qopts.toric = inst.options.toric;
        v = qmld::formula_mld_quot(qmld::group_weights(inst.group), inst.dimension,
                                   inst.ideal, qopts);
      } else if (mode == "hyperquot") {
        qmld::HyperquotientInstance h{inst.group, inst.equations, inst.ideal};
        v = qmld::mld_hyperquot(h, inst.options);
      } else {
        v = qmld::mld_reid_tai(inst.group, inst.ideal, inst.options);
      }
      json r = base_record("mld." + mode, flags, input, start);
      r["result"] = qmld::mld_value_to_json(v);
      r["budgets"] = {{"m_max", inst.options.m_max},
                      {"w_max", inst.options.w_max},
                      {"b1_max", inst.options.b1_max},
                      {"groebner_budget", inst.options.groebner.budget}};
      return emit(r, flags, budget_limited(v) ? 2 : 0);
    }

    if (verify_cmd->parsed()) {
      if (which == "acc") {
        qmld::EngineOptions opts;
        CommonFlags f = flags;
        apply_flags(opts, f);
        qmld::AccReport acc = qmld::acc_sample(static_cast<unsigned>(acc_dim), acc_max_order, opts);
        json r = base_record("verify.acc", flags, std::nullopt, start);
        std::vector<std::string> vals;
        for (const auto& v : acc.values) vals.push_back(qmld::rat_to_string(v));
        r["values"] = vals;
        r["instances"] = acc.instances;
        r["oracle_match"] = acc.oracle_match;
        r["values_in_range"] = acc.values_in_range;
        bool ok = acc.oracle_match && acc.values_in_range;
        return emit(r, flags, ok ? 0 : 1);
      }
      json input = load_json_file(file);
      qmld::InstanceFile inst = qmld::parse_instance(input);
      apply_flags(inst.options, flags);
      qmld::VerificationReport rep;
      if (which == "pia") {
        qmld::HyperquotientInstance h{inst.group, inst.equations, inst.ideal};
        rep = qmld::verify_pia(h, inst.options);
      } else {
        rep = qmld::verify_consistency(inst.group, inst.ideal, inst.options);
      }
      json r = base_record("verify." + which, flags, input, start);
      r["report"] = qmld::report_to_json(rep);
      int code = rep.verdict == qmld::VerificationReport::Verdict::Mismatch ? 1 : 0;
      return emit(r, flags, code);
    }
  } catch (const qmld::BudgetExceeded& e) {
    json r;
    r["error"] = e.what();
    r["error_kind"] = "budget_exceeded";
    std::cout << r.dump() << "\n";
    return 2;
  } catch (const qmld::CapExceeded& e) {
    json r;
    r["error"] = e.what();
    r["error_kind"] = "cap_exceeded";
    std::cout << r.dump() << "\n";
    return 2;
  } catch (const qmld::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
