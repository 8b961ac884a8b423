#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "multispread/field.hpp"

namespace mspread {

// A vector of F_q^m as an integer: base-q digits are the coordinates, the
// first coordinate most significant. For q = 2 this is the usual bit mask
// with coordinate 1 as the top bit.
using Vec = std::uint64_t;

/// Canonical subspace of F_q^m: the basis is the reduced row echelon form,
/// rows stored as integers in pivot order (so the first row is the largest).
/// Equal subspaces compare equal; ordering is lexicographic on the rows.
class Subspace {
 public:
  Subspace() = default;

  std::uint32_t q() const { return q_; }
  int ambient() const { return m_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<Vec>& basis() const { return rows_; }

  auto operator<=>(const Subspace&) const = default;

 private:
  friend class Space;
  Subspace(std::uint32_t q, int m, std::vector<Vec> rows) : q_(q), m_(m), rows_(std::move(rows)) {}

  std::uint32_t q_ = 2;
  int m_ = 0;
  std::vector<Vec> rows_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept {
    std::size_t h = std::hash<int>{}(s.ambient()) ^ (std::size_t{s.q()} << 20);
    for (Vec v : s.basis()) h = h * 1000003u ^ std::hash<Vec>{}(v);
    return h;
  }
};

/// The ambient space F_q^m together with its coordinate field. All subspace
/// algebra goes through a Space; mixing ambients throws MixedAmbient.
class Space {
 public:
  /// Guard for operations that touch every vector or every subspace.
  static constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;

  Space(Field field, int m);
  static Space over(std::uint64_t q, int m);

  const Field& field() const { return field_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  int m() const { return m_; }
  /// q^m.
  std::uint64_t size() const { return size_; }

  bool operator==(const Space& o) const { return m_ == o.m_ && field_ == o.field_; }

  // Vectors.
  Elem coord(Vec v, int i) const;
  std::vector<Elem> coords(Vec v) const;
  Vec from_coords(const std::vector<Elem>& c) const;
  Vec unit(int i) const;
  Vec add(Vec a, Vec b) const;
  Vec sub(Vec a, Vec b) const;
  Vec neg(Vec a) const;
  Vec scale(Elem c, Vec v) const;
  Elem dot(Vec a, Vec b) const;

  // Subspaces.
  Subspace span(const std::vector<Vec>& vectors) const;
  Subspace zero() const;
  Subspace full() const;
  Subspace sum(const Subspace& a, const Subspace& b) const;
  Subspace intersect(const Subspace& a, const Subspace& b) const;
  /// Orthogonal complement for the standard dot product.
  Subspace complement(const Subspace& s) const;
  /// Residue of v after elimination against the canonical basis of s.
  Vec reduce(const Subspace& s, Vec v) const;
  bool contains(const Subspace& s, Vec v) const;
  bool includes(const Subspace& big, const Subspace& small) const;
  /// Pivot columns (coordinate indices) of the canonical basis.
  std::vector<int> pivots(const Subspace& s) const;
  /// Throws MixedAmbient unless s lives in this space.
  void check(const Subspace& s) const;

  /// Calls f(v) for all q^dim vectors of s, zero included.
  void for_each_vector(const Subspace& s, const std::function<void(Vec)>& f) const;
  /// All d-subspaces, each exactly once (generation order, not sorted).
  void for_each_subspace(int d, const std::function<void(const Subspace&)>& f) const;
  /// All d-subspaces in canonical (lexicographic) order.
  std::vector<Subspace> enumerate_subspaces(int d) const;
  /// Number of d-subspaces of F_q^m.
  std::uint64_t gaussian_binomial(int d) const;

  // Text forms.
  /// "0x1f" for q = 2, decimal otherwise.
  std::string format_vector(Vec v) const;
  /// Accepts "0x" hex or decimal.
  Vec parse_vector(std::string_view text) const;
  /// Coordinates written out, e.g. "01011"; digits joined by ':' when q > 10.
  std::string digit_string(Vec v) const;
  Vec from_digit_string(std::string_view text) const;
  /// "<101,011>"
  std::string to_string(const Subspace& s) const;

 private:
  Subspace make(std::vector<Vec> rows) const { return Subspace(q_, m_, std::move(rows)); }
  Subspace rref(std::vector<std::vector<Elem>> rows) const;

  Field field_;
  std::uint32_t q_;
  std::uint32_t p_;
  int m_;
  std::uint64_t size_;
  std::vector<Vec> place_;  // place_[i] = q^(m-1-i)
};

}  // namespace mspread
