#pragma once

#include <stdexcept>
#include <string>

namespace graphlim {

/// A request that is well-formed but violates a mathematical precondition
/// (negative Möbius value, non-normalized parameter, size mismatch, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded. The message names the cap.
class CapExceeded : public DomainError {
 public:
  CapExceeded(const std::string& cap_name, long long limit, long long requested)
      : DomainError(cap_name + " cap exceeded: limit " + std::to_string(limit) +
                    ", requested " + std::to_string(requested)),
        limit_(limit),
        requested_(requested) {}

  long long limit() const noexcept { return limit_; }
  long long requested() const noexcept { return requested_; }

 private:
  long long limit_;
  long long requested_;
};

/// Malformed textual input (graph6, JSON, rational literals).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_cap(const char* cap_name, long long limit, long long requested) {
  if (requested > limit) throw CapExceeded(cap_name, limit, requested);
}

}  // namespace graphlim
