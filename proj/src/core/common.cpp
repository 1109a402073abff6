#include "common.hpp"

namespace plsplit {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGluing: return "InvalidGluing";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::SameSide: return "SameSide";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::QuadConflict: return "QuadConflict";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NoEssentialIntersections: return "NoEssentialIntersections";
    case ErrorCode::NonParallelCircles: return "NonParallelCircles";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OneSided: return "OneSided";
    case ErrorCode::OverlapUnresolved: return "OverlapUnresolved";
    case ErrorCode::SeedDegenerate: return "SeedDegenerate";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Perm4 Perm4::parse(std::string_view s) {
  if (s.size() != 4) throw Error(ErrorCode::Parse, "permutation must have 4 digits: '" + std::string(s) + "'");
  Perm4 p;
  for (int i = 0; i < 4; ++i) {
    if (s[i] < '0' || s[i] > '3')
      throw Error(ErrorCode::Parse, "bad permutation digit in '" + std::string(s) + "'");
    p.img_[i] = static_cast<uint8_t>(s[i] - '0');
  }
  if (!p.valid()) throw Error(ErrorCode::Parse, "not a permutation: '" + std::string(s) + "'");
  return p;
}

}  // namespace plsplit
