#include "liegeo/error.hpp"

namespace liegeo {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::not_orthogonal: return "not-orthogonal";
    case Errc::linearly_dependent: return "linearly-dependent";
    case Errc::not_nested: return "not-nested";
    case Errc::not_strict: return "not-strict";
    case Errc::not_subalgebra: return "not-a-subalgebra";
    case Errc::not_spanning: return "not-spanning";
    case Errc::not_bracket_generating: return "not-bracket-generating";
    case Errc::invalid_parameters: return "invalid-parameters";
    case Errc::unknown_name: return "unknown-name";
    case Errc::invalid_partition: return "invalid-partition";
    case Errc::invalid_momentum: return "invalid-momentum";
    case Errc::unsupported_space: return "unsupported-space";
    case Errc::integration_diverged: return "integration-diverged";
    case Errc::rank_ambiguous: return "numerical-rank-ambiguous";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message, int level)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), level_(level) {}

IntegrationDiverged::IntegrationDiverged(double last_good_time, const std::string& message)
    : Error(Errc::integration_diverged, message), last_good_time_(last_good_time) {}

RankAmbiguous::RankAmbiguous(double below, double above, const std::string& message)
    : Error(Errc::rank_ambiguous, message), below_(below), above_(above) {}

}  // namespace liegeo
