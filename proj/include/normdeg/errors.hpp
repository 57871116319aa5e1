#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace normdeg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group spec text. `position` is the 0-based offset of the
/// offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A family parameter outside the range the construction is defined on.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Group order above an enumeration or table-size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what_cap, std::uint64_t order, std::uint64_t cap)
      : Error(what_cap + " exceeded: group order " + std::to_string(order) +
              " > cap " + std::to_string(cap)),
        order_(order),
        cap_(cap) {}

  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t order_;
  std::uint64_t cap_;
};

class SieveExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace normdeg
