#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etalab {

enum class Errc {
  invalid_parameter,
  ring_mismatch,
  not_invertible,
  syntax,
  invalid_exponent,
  invalid_level,
  invalid_group,
  invalid_cusp,
  not_modular,
  out_of_range,
  budget_exceeded,
  cap_exceeded,
};

/// Stable machine-readable name, used in CLI error documents.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t position, const std::string& what)
      : Error(code, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace etalab
