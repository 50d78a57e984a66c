#ifndef COSAT_ERRORS_HPP_
#define COSAT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosat {

// Malformed formula text. `position` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A search exceeded a configured bound. Never a verdict.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A violated internal invariant (asserted size bound, broken structure).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Witness JSON that does not match the schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model that violates its frame conditions.
class FrameViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cosat

#endif  // COSAT_ERRORS_HPP_
