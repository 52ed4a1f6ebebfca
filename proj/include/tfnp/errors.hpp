#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfnp {

/// Input length does not match a circuit's or instance's arity.
class ArityError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input/output index outside the valid range, or a restriction that is not allowed.
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// An oracle or pullback received something that breaks its contract
/// (non-verifying answer, non-divisor factor, ...).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A query broke the size discipline of the active monitoring mode.
class MonitorViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The instance's guarantee turned out to be false (e.g. path budget ran out).
class MalformedInstance : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A desk-scale procedure was asked to work above its configured bound.
class RefusalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A sub-instance does not fit in the fixed-width cell reserved for it.
class SizingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tfnp
