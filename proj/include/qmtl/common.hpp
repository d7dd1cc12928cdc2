#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmtl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised for malformed presentations, words or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a search runs past its step, path or wall-clock allowance.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check of a computed certificate failed.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Wall-clock deadline shared by the long-running searches. A default
/// constructed budget never expires.
class Budget {
 public:
  Budget() = default;
  explicit Budget(double seconds)
      : deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds))) {}

  bool expired() const {
    return deadline_ && std::chrono::steady_clock::now() > *deadline_;
  }

  void check(const char* what) const {
    if (expired()) throw BudgetExceeded(std::string("time budget exceeded during ") + what);
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_bigint(const BigInt& v) {
  // Low limb plus sign is enough for bucketing.
  std::size_t h = std::hash<long long>{}(static_cast<long long>(v & BigInt(0x7fffffffffffffffLL)));
  h = hash_combine(h, v.sign() < 0 ? 1u : 0u);
  return hash_combine(h, boost::multiprecision::msb(abs(v) + 1));
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

}  // namespace qmtl
