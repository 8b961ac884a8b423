#pragma once

#include <cstdint>

namespace mspread {

// Digitwise arithmetic on integers read as base-p digit strings. Addition in
// GF(p^l) and in F_q^m (q = p^l) is exactly this digitwise addition mod p.

inline std::uint64_t digit_add(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  if (p == 2) return a ^ b;
  std::uint64_t r = 0, pw = 1;
  while (a != 0 || b != 0) {
    std::uint64_t d = a % p + b % p;
    if (d >= p) d -= p;
    r += d * pw;
    a /= p;
    b /= p;
    pw *= p;
  }
  return r;
}

inline std::uint64_t digit_neg(std::uint64_t a, std::uint32_t p) {
  if (p == 2) return a;
  std::uint64_t r = 0, pw = 1;
  while (a != 0) {
    const std::uint64_t d = a % p;
    if (d != 0) r += (p - d) * pw;
    a /= p;
    pw *= p;
  }
  return r;
}

inline std::uint64_t digit_sub(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  return digit_add(a, digit_neg(b, p), p);
}

}  // namespace mspread
