#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liegeo/filtration.hpp"
#include "liegeo/flows.hpp"
#include "liegeo/manakov.hpp"

namespace liegeo::cli {

inline constexpr int kSpecVersion = 1;

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  int degree = 2;
  /// "hamiltonian", "I1" (sum of squares), "I2" (so(4) Pfaffian).
  std::vector<std::string> known;
  /// Flat wedge indices; empty means all coordinates.
  std::vector<int> variables;
};

struct HullConfig {
  std::vector<AlgebraElement> seeds;
  std::vector<std::string> labels;
};

struct RunConfig {
  std::string source;
  int n = 0;
  std::shared_ptr<const Filtration> filtration;
  std::optional<std::set<int>> index_set;

  FieldKind kind = FieldKind::sub_riemannian_chain;
  std::vector<double> s;
  bool random_s = false;
  std::optional<Matrix> a0;
  std::vector<double> a, b;
  double nu1 = 1.0, nu2 = 0.5;

  std::optional<Vector> x0;
  std::optional<Matrix> g0;

  double t_end = 1.0;
  double step = 1e-3;
  int record_every = 1;
  std::vector<std::string> monitors;
  std::string output;
  bool include_g = false;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;

  std::optional<SearchConfig> search;
  std::optional<HullConfig> hull;
};

/// Throws ConfigError on unknown keys, wrong types or failed validation.
RunConfig parse_config(const nlohmann::json& doc, std::string source = "<inline>");
RunConfig load_config(const std::string& path);

/// Fills random parameters and initial data from the seed, then validates
/// the field (SR structure when an index set is given).
VectorFieldSpec make_field(const RunConfig& cfg);
AlgebraElement initial_momentum(const RunConfig& cfg);
GroupElement initial_position(const RunConfig& cfg);
/// Parameters s after applying `random_s`.
std::vector<double> resolved_s(const RunConfig& cfg);

/// "e_12", "x_12", "x12", "12", "1_10".
std::pair<int, double> parse_coordinate(const SoBasis& basis, std::string key);
AlgebraElement parse_element(const SoBasis& basis, const nlohmann::json& map);

}  // namespace liegeo::cli
