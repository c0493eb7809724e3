#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poisson_forge {

enum class ErrorKind {
  kContextMismatch,
  kInvertibility,
  kParse,
  kUnknownIdentifier,
  kSchema,
  kIo,
  kUndefined,
  kNotNilpotent,
  kInconsistent,
  kInvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Syntax errors carry the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::kParse, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace poisson_forge
