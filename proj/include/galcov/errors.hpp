#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace galcov {

  // Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed input: unknown names, bad arguments, syntax errors.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  // A lift or lookup left the explored part of a truncated cover.
  class TruncationError : public Error {
   public:
    using Error::Error;
  };

  // One failed invariant. `rule` is a short stable tag, `message` names the
  // offending items.
  struct Violation {
    std::string rule;
    std::string message;

    bool operator==(Violation const&) const = default;
  };

  using ValidationReport = std::vector<Violation>;

  // Thrown when an operation requires a report to be empty.
  class ValidationError : public Error {
   public:
    explicit ValidationError(std::string const& what, ValidationReport report)
        : Error(what + summarize(report)), report_(std::move(report)) {}

    ValidationReport const& report() const noexcept {
      return report_;
    }

   private:
    static std::string summarize(ValidationReport const& report) {
      std::string out;
      for (auto const& v : report) {
        out += "\n  [" + v.rule + "] " + v.message;
      }
      return out;
    }

    ValidationReport report_;
  };

}  // namespace galcov
