#pragma once

// Parser for enveloping-algebra expressions such as "eta+ * mu-",
// "comm(X, mu+)^2 - 1/2 i R". Generators: X, R, eta+, eta-, mu+, mu-.

#include <cstddef>
#include <string>

#include "prres/errors.hpp"
#include "prres/ncalg.hpp"

namespace prres::ncalg {

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError("parse error at position " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Expanded words, unordered. Throws ParseError, or FuelExhausted when the
/// expansion would exceed `max_letters` letters in total.
Word parse_expression(const std::string& text, std::size_t max_letters = 2'000'000);

}  // namespace prres::ncalg
