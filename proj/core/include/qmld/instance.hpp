#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qmld/engine.hpp"

namespace qmld {

inline constexpr const char* kToolVersion = "qmld 0.1.0";

/// Parsed instance file: dimension, group, optional equations and ideal,
/// engine options. Throws InvalidInput with a field path on schema errors.
struct InstanceFile {
  std::size_t dimension = 0;
  long ambient_order = 1;
  FiniteGroup group;
  std::vector<Poly> equations;  // in the x ring
  MonomialRIdeal ideal;
  EngineOptions options;
  std::size_t group_cap = kDefaultGroupCap;
};

InstanceFile parse_instance(const nlohmann::json& j);
InstanceFile load_instance_file(const std::string& path);

/// Stable content hash of an instance document.
std::string input_hash(const nlohmann::json& j);

nlohmann::json mld_value_to_json(const MldValue& v);
nlohmann::json report_to_json(const VerificationReport& r);

}  // namespace qmld
