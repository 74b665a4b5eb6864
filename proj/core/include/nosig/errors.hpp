#pragma once

#include <stdexcept>
#include <string>

namespace nosig {

/// Shape or dimension mismatch between operands.
class StructuralError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Result would exceed the fixed dense workspace (16x16).
class SizeError : public StructuralError {
  public:
    using StructuralError::StructuralError;
};

/// An operation's precondition does not hold (non-Hermitian input, mixed
/// state handed to a pure-state-defined map, ...).
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Parameter outside its physical domain (Bloch norm > 1, angle out of range).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

} // namespace nosig
