#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ekr {

/// Exact binomial coefficient C(a, b).
///
/// C(a, b) = 0 when b < 0 or b > a (with a >= 0). A negative top argument
/// is a domain error, and a result that does not fit in int64 is reported
/// instead of wrapping.
inline std::int64_t binom(std::int64_t a, std::int64_t b) {
  if (a < 0) {
    throw std::domain_error("binom: negative top argument " + std::to_string(a));
  }
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 r = 1;
  for (std::int64_t i = 0; i < b; ++i) {
    r = r * static_cast<unsigned __int128>(a - i);
    r /= static_cast<unsigned __int128>(i + 1);
    if (r > static_cast<unsigned __int128>(INT64_MAX)) {
      throw std::overflow_error("binom: C(" + std::to_string(a) + "," + std::to_string(b) +
                                ") overflows int64");
    }
  }
  return static_cast<std::int64_t>(r);
}

/// Overflow-checked accumulation used by the closed-form evaluators.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r{};
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sum");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r{};
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in product");
  return r;
}

}  // namespace ekr
