#pragma once

#include <stdexcept>
#include <string>

namespace twistor {

enum class ErrorKind {
  kInvalidMap,        // fractional map with (numerically) vanishing determinant
  kInvalidFiber,      // operation undefined on the t = 0 / t = infinity fibers
  kOnDiagonal,        // point of X_t on the diagonal: no line of M+ or M- passes
  kLiesOnQ,           // point or parameter belonging to the divisor Q
  kNumericalFailure,  // roundtrip check failed
  kDomain,            // argument outside the operation's domain
  kChart,             // no coordinate chart is regular at the argument
  kParse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twistor
