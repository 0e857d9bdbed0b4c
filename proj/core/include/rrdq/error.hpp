#pragma once

#include <stdexcept>
#include <string>

namespace rrdq {

/// Raised for every contract violation in the library: generator mismatches,
/// empty truncation windows, malformed inputs, non-symmetric series, ...
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace rrdq
