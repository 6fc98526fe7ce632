#include "mkin/error.hpp"

namespace mkin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NonSmoothBoundary: return "NonSmoothBoundary";
    case ErrorCode::NonSmoothBall: return "NonSmoothBall";
    case ErrorCode::InvalidBall: return "InvalidBall";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::IrregularCurve: return "IrregularCurve";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::NotStarlike: return "NotStarlike";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DegenerateDensity: return "DegenerateDensity";
    case ErrorCode::MeasureMismatch: return "MeasureMismatch";
    case ErrorCode::CenterPoint: return "CenterPoint";
    case ErrorCode::NoCommonContact: return "NoCommonContact";
    case ErrorCode::TangentMismatch: return "TangentMismatch";
    case ErrorCode::PoleCoincidence: return "PoleCoincidence";
    case ErrorCode::TranslativeMotion: return "TranslativeMotion";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::OnInflectionCurve: return "OnInflectionCurve";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mkin
