#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mspread {

// Element of GF(p^l) in its canonical integer encoding: the base-p digits are
// the polynomial coefficients, constant term least significant.
using Elem = std::uint32_t;

class FieldElement;

/// Finite field GF(p^l) = GF(p)[x] / <modulus>.
///
/// A Field is a cheap handle onto immutable shared data, so it can be copied
/// freely and shared between threads. Exp/log tables are built eagerly for
/// q <= 2^16; larger fields (up to 2^20) multiply by polynomial reduction.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 16;

  /// `modulus` is the integer digit mask of a monic degree-l polynomial
  /// (z^9 + z^4 + 1 over GF(2) is 0x211). When omitted, the irreducible
  /// polynomial with the smallest mask is used. With `require_primitive`, the
  /// class of x (or the root of a linear modulus) must generate GF(q)^*.
  static Field make(std::uint32_t p, int l, std::optional<std::uint64_t> modulus = std::nullopt,
                    bool require_primitive = false);

  /// GF(q) for a prime power q with the default modulus.
  static Field of_order(std::uint64_t q);

  std::uint32_t characteristic() const;
  int degree() const;
  std::uint32_t order() const;
  std::uint64_t modulus_mask() const;
  /// Modulus coefficients, constant term first; size degree()+1, monic.
  const std::vector<Elem>& modulus() const;
  bool is_prime_field() const { return degree() == 1; }
  bool has_tables() const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const;

  /// Smallest encoding of multiplicative order q-1.
  Elem primitive_element() const;
  std::uint64_t multiplicative_order(Elem a) const;
  /// The class of x when l >= 2, the root of the linear modulus when l == 1.
  Elem modulus_root() const;

  FieldElement element(Elem value) const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  struct Impl;
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Element bound to its field; mixing fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(Field field, Elem value);

  const Field& field() const { return field_; }
  Elem value() const { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const;

 private:
  void require_same(const FieldElement& o) const;
  Field field_;
  Elem value_;
};

/// x -> sum_{j < l/k} x^{(p^k)^j}, the trace onto the subfield of order p^k.
class TraceMap {
 public:
  TraceMap(Field field, int k);
  Elem operator()(Elem x) const;
  int subfield_degree() const { return k_; }

 private:
  Field field_;
  int k_;
};

TraceMap trace_map(const Field& field, int k);

// Polynomial helpers over GF(p), coefficient vectors with constant term first.
namespace poly {
std::vector<Elem> from_mask(std::uint64_t mask, std::uint32_t p);
std::uint64_t to_mask(const std::vector<Elem>& coeffs, std::uint32_t p);
bool is_irreducible_mod_p(const std::vector<Elem>& monic, std::uint32_t p);
}  // namespace poly

}  // namespace mspread
