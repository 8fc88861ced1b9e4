#pragma once

#include <stdexcept>
#include <string>

namespace liegeo {

enum class Errc {
  dimension_mismatch,
  not_orthogonal,
  linearly_dependent,
  not_nested,
  not_strict,
  not_subalgebra,
  not_spanning,
  not_bracket_generating,
  invalid_parameters,
  unknown_name,
  invalid_partition,
  invalid_momentum,
  unsupported_space,
  integration_diverged,
  rank_ambiguous,
};

const char* to_string(Errc code) noexcept;

/// Library error. `level()` names the failing filtration level when the
/// error comes from chain validation, otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, int level = -1);

  Errc code() const noexcept { return code_; }
  int level() const noexcept { return level_; }

 private:
  Errc code_;
  int level_;
};

class IntegrationDiverged : public Error {
 public:
  IntegrationDiverged(double last_good_time, const std::string& message);
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

class RankAmbiguous : public Error {
 public:
  RankAmbiguous(double below, double above, const std::string& message);
  /// Largest singular value counted as zero and smallest counted as nonzero,
  /// both relative to the largest singular value.
  double below() const noexcept { return below_; }
  double above() const noexcept { return above_; }

 private:
  double below_;
  double above_;
};

}  // namespace liegeo
