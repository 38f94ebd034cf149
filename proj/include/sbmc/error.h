#pragma once

#include <stdexcept>
#include <string>

namespace sbmc {

enum class ErrorKind {
  kInvalidArgument,
  kSizeMismatch,
  kCapExceeded,
  kBudgetExceeded,
  kDegenerateMeans,
  kInconsistent,
  kParse,
};

// All library failures are reported as sbmc::Error; kind() lets callers
// (the CLI in particular) tell them apart without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sbmc
