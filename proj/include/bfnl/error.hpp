#pragma once

#include <stdexcept>
#include <string>

namespace bfnl {

// Domain error: violated precondition, cap, or malformed input.
// The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace bfnl
