#pragma once

#include <stdexcept>
#include <string>

namespace hwalg {

/// Operands built for different matrix dimensions or commutation tables.
class IncompatibleOperands : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symbol that must be bound for numeric evaluation was not.
class UnboundSymbol : public std::out_of_range {
 public:
  explicit UnboundSymbol(const std::string& name)
      : std::out_of_range("unbound parameter symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Adjoint series did not vanish within the allowed depth.
class NonNilpotentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text in one of the textual grammars.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generator name used by an algebra table is not in the generator set.
class UnknownGenerator : public std::out_of_range {
 public:
  explicit UnknownGenerator(const std::string& name)
      : std::out_of_range("unknown generator '" + name + "'") {}
};

/// Unknown regime or preset label.
class UnknownRegime : public std::invalid_argument {
 public:
  explicit UnknownRegime(const std::string& name)
      : std::invalid_argument("unknown regime '" + name + "'") {}
};

/// Grid violates its invariants or cannot support a stencil.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hwalg
