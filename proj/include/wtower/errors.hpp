#pragma once

#include <stdexcept>
#include <string>

namespace wtower {

enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  WellDefinedness,
  NotDivisible,
  TorsionPresent,
  ImageEscapesKernel,
  LiftMismatch,
  PullbackMismatch,
  NotAMorphism,
  NotInvariant,
  Parse,
  Schema,
  Budget,
  UnknownName,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wtower
