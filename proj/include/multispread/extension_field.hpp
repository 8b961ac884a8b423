#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "multispread/field.hpp"

namespace mspread {

/// GF(Q^M) built as GF(Q)[x] / <modulus> over a base field GF(Q).
///
/// Elements are integers whose base-Q digits are the coefficients (constant
/// term least significant), each digit being a base-field encoding. Read as
/// a vector of F_Q^M (first coordinate most significant) the same integer is
/// the coordinate vector, so F_Q-linear structure is shared with Space.
/// Instances with identical data are cached and shared.
class ExtensionField {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  /// `modulus` is the base-Q digit mask of a monic degree-M polynomial.
  static ExtensionField make(const Field& base, int degree,
                             std::optional<std::uint64_t> modulus = std::nullopt,
                             bool require_primitive = false);

  const Field& base() const;
  int degree() const;
  std::uint64_t order() const;
  std::uint64_t modulus_mask() const;
  bool has_tables() const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Multiplication by a base-field scalar.
  std::uint64_t scale(Elem c, std::uint64_t a) const;

  /// Smallest encoding of order Q^M - 1.
  std::uint64_t primitive_element() const;
  std::uint64_t multiplicative_order(std::uint64_t a) const;
  /// The class of x (for M == 1, the root of the linear modulus).
  std::uint64_t modulus_root() const;

 private:
  struct Impl;
  explicit ExtensionField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace mspread
