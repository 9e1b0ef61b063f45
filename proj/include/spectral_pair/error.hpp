#ifndef SPECTRAL_PAIR_ERROR_HPP
#define SPECTRAL_PAIR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace spair {

enum class ErrorCode {
  DegenerateLeadingCoefficient,
  SingularMatrix,
  RankNotTwo,
  RepeatedEigenvalues,
  OrderingMismatch,
  GaugeDegenerate,
  DegenerateDivisor,
  InvalidSpectralData,
  LinearSystemSingular,
  ClosedFormMismatch,
  CoincidentPoints,
  LineOnCurve,
  InputsNotIncident,
  SingularA,
  SwappedPairDegenerate,
  DeterminantNotUnit,
  IntermediateDegeneracy,
};

/// Stable machine-readable name, used in CLI error documents.
constexpr std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateLeadingCoefficient: return "degenerate_leading_coefficient";
    case ErrorCode::SingularMatrix: return "singular_matrix";
    case ErrorCode::RankNotTwo: return "rank_not_two";
    case ErrorCode::RepeatedEigenvalues: return "repeated_eigenvalues";
    case ErrorCode::OrderingMismatch: return "ordering_mismatch";
    case ErrorCode::GaugeDegenerate: return "gauge_degenerate";
    case ErrorCode::DegenerateDivisor: return "degenerate_divisor";
    case ErrorCode::InvalidSpectralData: return "invalid_spectral_data";
    case ErrorCode::LinearSystemSingular: return "linear_system_singular";
    case ErrorCode::ClosedFormMismatch: return "closed_form_mismatch";
    case ErrorCode::CoincidentPoints: return "coincident_points";
    case ErrorCode::LineOnCurve: return "line_on_curve";
    case ErrorCode::InputsNotIncident: return "inputs_not_incident";
    case ErrorCode::SingularA: return "singular_a";
    case ErrorCode::SwappedPairDegenerate: return "swapped_pair_degenerate";
    case ErrorCode::DeterminantNotUnit: return "determinant_not_unit";
    case ErrorCode::IntermediateDegeneracy: return "intermediate_degeneracy";
  }
  return "unknown";
}

/// All failures in the library are reported through this exception. The code
/// identifies the violated precondition; what() carries a human-readable
/// diagnostic including the measured margin where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spair

#endif  // SPECTRAL_PAIR_ERROR_HPP
