#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordinal {

enum class ErrorKind {
  overflow,
  malformed_term,
  structure_mismatch,
  underflow,
  invalid_dilation,
  unsupported_exponent,
  unsupported_bound,
  invalid_index,
  not_well_founded,
  instance_too_large,
  syntax,
  io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::overflow: return "arithmetic overflow";
    case ErrorKind::malformed_term: return "malformed term";
    case ErrorKind::structure_mismatch: return "structure mismatch";
    case ErrorKind::underflow: return "underflow";
    case ErrorKind::invalid_dilation: return "invalid dilation";
    case ErrorKind::unsupported_exponent: return "unsupported exponent";
    case ErrorKind::unsupported_bound: return "unsupported bound";
    case ErrorKind::invalid_index: return "invalid index";
    case ErrorKind::not_well_founded: return "not well-founded";
    case ErrorKind::instance_too_large: return "instance too large";
    case ErrorKind::syntax: return "syntax error";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ordinal
