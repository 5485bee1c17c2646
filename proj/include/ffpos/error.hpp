#pragma once

#include <stdexcept>
#include <string>

namespace ffpos {

enum class Errc {
  NotPrime,
  SizeExceeded,
  DivisionByZero,
  NotApplicable,
  NotASquare,
  NotASubfieldOrder,
  NotSquareOrder,
  EvenCharacteristic,
  NotStronglyRegular,
  RouteDisagreement,
  PreconditionViolated,
  VerificationFailed,
  BadInput,
};

/// Domain error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::SizeExceeded: return "SizeExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NotASquare: return "NotASquare";
    case Errc::NotASubfieldOrder: return "NotASubfieldOrder";
    case Errc::NotSquareOrder: return "NotSquareOrder";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::NotStronglyRegular: return "NotStronglyRegular";
    case Errc::RouteDisagreement: return "RouteDisagreement";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace ffpos
