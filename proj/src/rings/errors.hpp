#ifndef AW_RINGS_ERRORS_HPP
#define AW_RINGS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aw {

// Mixing elements of different rings, malformed matrices, bad vectors.
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Operation not defined for the given ring class.
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition failed (names the hypothesis).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Exact division requested where a coefficient is not divisible.
class IndivisibleError : public std::runtime_error {
public:
  IndivisibleError(const std::string& what, std::string monomial)
      : std::runtime_error(what), m_monomial(std::move(monomial)) {}
  const std::string& monomial() const { return m_monomial; }

private:
  std::string m_monomial;
};

// Witt vector of the wrong length for the requested operation.
class LengthError : public std::runtime_error {
public:
  explicit LengthError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Tilt arithmetic asked for a coordinate beyond the stored window.
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario-file syntax error with position info.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        m_line(line), m_col(col) {}
  int line() const { return m_line; }
  int col() const { return m_col; }

private:
  int m_line, m_col;
};

}  // namespace aw

#endif
