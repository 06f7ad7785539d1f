#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtc {

enum class ErrorKind {
  Parameter,             // malformed input (bad family/rank, length mismatch, ...)
  Inadmissible,          // (algebra, ell, p) does not define a category
  Resonance,             // a quantum-dimension denominator vanishes
  Degenerate,            // a simple object has vanishing quantum dimension
  NumericalInstability,  // a decision landed inside its tolerance band
  Capability,            // request exceeds what the oracle routes support
  OracleFailure,         // an oracle produced non-integral fusion data
  Coverage,              // no closed-form table row covers the parameters
  Cache,                 // fusion cache file unreadable or inconsistent
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rtc
