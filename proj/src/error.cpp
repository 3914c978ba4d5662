#include "umb/error.hpp"

namespace umb {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::CausalCharacterMismatch: return "CausalCharacterMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DegenerateInducedMetric: return "DegenerateInducedMetric";
    case ErrorCode::NonUnitDirection: return "NonUnitDirection";
    case ErrorCode::UnsupportedAmbient: return "UnsupportedAmbient";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::WrongCausalType: return "WrongCausalType";
    case ErrorCode::UnknownCatalogId: return "UnknownCatalogId";
    case ErrorCode::MalformedParameters: return "MalformedParameters";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace umb
