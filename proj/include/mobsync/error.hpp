#pragma once

#include <stdexcept>
#include <string>

namespace mobsync {

enum class Errc {
  ParseError,
  SelfLoop,
  NonPositiveWeight,
  Disconnected,
  Trivial,
  BadPoint,
  NotDirectionPreserving,
  OvershootsEvent,
  HandlerDomainViolation,
  PairOverlap,
  ReachabilityFailure,
  WeightMismatch,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace mobsync
