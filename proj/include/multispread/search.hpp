#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multispread/extension_field.hpp"
#include "multispread/multispread.hpp"

namespace mspread {

struct SearchSpec {
  std::uint32_t q = 2;
  int m = 1;
  int t = 1;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  /// Exact member counts per dimension; dimensions not listed are free.
  std::optional<std::map<int, std::int64_t>> dims;
  /// Restrict to multispreads invariant under x -> g x, g of this order in GF(q^m)^*.
  std::optional<std::uint64_t> group_order;
  /// Node limit, applied to each first-level branch separately.
  std::uint64_t budget = 10'000'000;
  /// 0 keeps the natural candidate order; other values shuffle it.
  std::uint64_t seed = 0;
  int threads = 1;
};

enum class SearchOutcome { Found, Exhausted, Budget };
const char* outcome_name(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  std::optional<Multispread> multispread;
  /// Nodes visited in the branches that decide the outcome.
  std::uint64_t nodes = 0;
  /// Digest of the branching decisions, identical for identical spec and seed.
  std::uint64_t trace = 0;
  std::string note;
};

/// Throws SpecInconsistent when the prescribed dimension counts cannot meet
/// the lambda and mu counting identities (with the mod-2 coverage argument
/// for q = 2 and odd mu). Does nothing when spec.dims is empty.
void check_dims(const SearchSpec& spec);

/// Backtracking multi-cover search. Throws SpecInconsistent (see check_dims),
/// OrderNotDividing, or AmbientTooLarge when the candidate pool is too big.
SearchResult exact_cover_search(const SearchSpec& spec);

struct SubspaceOrbit {
  Subspace representative;  // least subspace of the orbit
  std::uint64_t size = 0;
};

/// Orbits of x -> g x on subspaces of F_q^m = GF(q^m), g = gamma^((q^m-1)/k).
class OrbitSystem {
 public:
  OrbitSystem(Space space, ExtensionField field, std::uint64_t generator, std::uint64_t order);

  const Space& space() const { return space_; }
  std::uint64_t generator() const { return generator_; }
  std::uint64_t order() const { return order_; }
  const std::vector<SubspaceOrbit>& orbits() const { return orbits_; }
  /// Least element of each orbit of nonzero vectors (all of size k).
  const std::vector<Vec>& vector_orbits() const { return vector_orbits_; }

  /// Index into vector_orbits() of the orbit containing v != 0.
  std::size_t vector_orbit_of(Vec v) const { return orbit_index_[v]; }
  /// Image of u under x -> g^j x.
  Subspace image(const Subspace& u, std::uint64_t j) const;
  /// All members of the orbit of u.
  std::vector<Subspace> expand(const Subspace& u) const;
  /// For each vector orbit met by o: how many members of o contain a fixed
  /// vector of that orbit.
  std::vector<std::pair<std::size_t, std::int64_t>> profile(const SubspaceOrbit& o) const;

 private:
  friend OrbitSystem singer_orbits(std::uint32_t, int, std::uint64_t, const std::vector<int>&);
  Space space_;
  ExtensionField field_;
  std::uint64_t generator_;
  std::uint64_t order_;
  std::vector<SubspaceOrbit> orbits_;
  std::vector<Vec> vector_orbits_;
  std::vector<std::uint32_t> orbit_index_;
};

/// Throws OrderNotDividing unless k divides q^m - 1.
OrbitSystem singer_orbits(std::uint32_t q, int m, std::uint64_t k, const std::vector<int>& dims);

}  // namespace mspread
