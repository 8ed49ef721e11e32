#ifndef HYPERUNIF_ERROR_HPP_
#define HYPERUNIF_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperunif {

/// Invalid arguments: dimension mismatch, out-of-range parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not meet its error budget.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what, std::string diagnostics = {})
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// Malformed input data. Carries every offending line, not just the first.
class ParseError : public std::runtime_error {
 public:
  struct Issue {
    std::size_t line;
    std::string message;
  };

  ParseError(const std::string& what, std::vector<Issue> issues)
      : std::runtime_error(what), issues_(std::move(issues)) {}

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace hyperunif

#endif  // HYPERUNIF_ERROR_HPP_
