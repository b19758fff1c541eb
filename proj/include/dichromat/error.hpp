#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace dichromat {

// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (m < 1, index out of range, bad params).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Request exceeds a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Input data (trace, params file, CSV) is structurally broken.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Size caps for the exact algorithms. Values are tree depths m.
struct Caps {
  int tree_max_m = 24;
  int profile_max_m = 14;
  int achievable_max_m = 8;

  // DICHROMAT_MAX_M, when set to a positive integer, replaces both DP caps
  // and lifts the tree cap if needed.
  static Caps from_env() {
    Caps caps;
    const char* raw = std::getenv("DICHROMAT_MAX_M");
    if (raw == nullptr || *raw == '\0') return caps;
    char* end = nullptr;
    const long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1 || value > 30) {
      throw InvalidParameter("DICHROMAT_MAX_M must be an integer in [1, 30], got '" +
                             std::string(raw) + "'");
    }
    caps.profile_max_m = static_cast<int>(value);
    caps.achievable_max_m = static_cast<int>(value);
    caps.tree_max_m = std::max(caps.tree_max_m, static_cast<int>(value));
    return caps;
  }
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

inline void require_cap(int m, int cap, const std::string& what) {
  if (m > cap) {
    throw CapacityError(what + ": m = " + std::to_string(m) + " exceeds cap " +
                        std::to_string(cap));
  }
}

}  // namespace detail
}  // namespace dichromat
