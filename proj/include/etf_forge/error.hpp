#pragma once

#include <stdexcept>
#include <string>

namespace etf {

// Every failure surfaced by the library carries a short machine-readable code
// ("dim", "not_prime", "infeasible_c", ...) plus a human detail message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace etf
