#include "error.hpp"

namespace lwcs {

const char* err_name(Err e) {
  switch (e) {
    case Err::Ok: return "Ok";
    case Err::NotPrime: return "NotPrime";
    case Err::CapExceeded: return "CapExceeded";
    case Err::ZeroInverse: return "ZeroInverse";
    case Err::CtxMismatch: return "CtxMismatch";
    case Err::ZeroArgument: return "ZeroArgument";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::FilterRequiresQuadExt: return "FilterRequiresQuadExt";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotRegular: return "NotRegular";
    case Err::NotTrivialOnBase: return "NotTrivialOnBase";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::PoleHit: return "PoleHit";
    case Err::UnsupportedChar: return "UnsupportedChar";
    case Err::BadSubset: return "BadSubset";
    case Err::UnsupportedConductor: return "UnsupportedConductor";
    case Err::InsufficientPrecision: return "InsufficientPrecision";
    case Err::PrecisionLoss: return "PrecisionLoss";
    case Err::UnsupportedField: return "UnsupportedField";
    case Err::DivisionByZeroExpr: return "DivisionByZeroExpr";
    case Err::EssentialSingularity: return "EssentialSingularity";
    case Err::InsufficientOrder: return "InsufficientOrder";
    case Err::PoleAtOne: return "PoleAtOne";
    case Err::MissingArchStub: return "MissingArchStub";
    case Err::UnsupportedCase: return "UnsupportedCase";
    case Err::UsageError: return "UsageError";
    case Err::InvariantViolation: return "InvariantViolation";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace lwcs
