#ifndef PLANTED_ERRORS_HPP
#define PLANTED_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace planted {

enum class ParseErrorKind {
  kMalformedLine,
  kMissingVertexCount,
  kSelfLoop,
  kDuplicateEdge,
  kEndpointOutOfRange,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) +
                           (detail.empty() ? "" : " (" + detail + ")")),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// An exact computation would exceed its configured enumeration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Posterior requested for an observation that contains no copy of the pattern.
class NoCopiesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace planted

#endif  // PLANTED_ERRORS_HPP
