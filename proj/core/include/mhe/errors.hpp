#pragma once

#include <stdexcept>
#include <string>

namespace mhe {

// Bad input: unreadable files, malformed rows, violated preconditions on
// user-supplied data. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant (a bug, not bad data). Maps to CLI exit code 3.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace mhe
