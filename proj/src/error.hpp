#pragma once
#include <stdexcept>
#include <string>

namespace lwcs {

// numeric values are part of the C ABI, append only
enum class Err : int {
  Ok = 0,
  NotPrime = 1,
  CapExceeded = 2,
  ZeroInverse = 3,
  CtxMismatch = 4,
  ZeroArgument = 5,
  EvenCharacteristic = 6,
  FilterRequiresQuadExt = 7,
  ShapeMismatch = 8,
  NotRegular = 9,
  NotTrivialOnBase = 10,
  SingularMatrix = 11,
  PoleHit = 12,
  UnsupportedChar = 13,
  BadSubset = 14,
  UnsupportedConductor = 15,
  InsufficientPrecision = 16,
  PrecisionLoss = 17,
  UnsupportedField = 18,
  DivisionByZeroExpr = 19,
  EssentialSingularity = 20,
  InsufficientOrder = 21,
  PoleAtOne = 22,
  MissingArchStub = 23,
  UnsupportedCase = 24,
  UsageError = 25,
  InvariantViolation = 26,
  InvalidArgument = 27,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err e, const std::string& msg) { throw Error(e, msg); }

}  // namespace lwcs
