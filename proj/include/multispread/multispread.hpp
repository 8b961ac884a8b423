#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "multispread/space.hpp"

namespace mspread {

/// Multiset of subspaces: canonical subspace -> multiplicity (>= 1).
using MemberMap = std::map<Subspace, std::int64_t>;

MemberMap to_member_map(const std::vector<Subspace>& members);
/// Adds b into a (multiset sum).
void merge_members(MemberMap& a, const MemberMap& b, std::int64_t times = 1);

struct MultispreadParams {
  std::uint32_t q = 2;
  int m = 1;
  int t = 1;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  std::int64_t n = 0;

  bool operator==(const MultispreadParams&) const = default;
  /// "(1,2;2,3)_2"
  std::string to_string() const;
};

/// Coverage check: every nonzero x gets sum over members U containing x of
/// mult(U) * q^(t - dim U), and that sum must be the same for all x.
/// Throws CoverageError(NonUniformCoverage) or DimensionExceedsT.
MultispreadParams verify(const Space& space, const MemberMap& members, int t);

/// A verified multispread. Instances only exist after a successful verify().
class Multispread {
 public:
  static Multispread verified(const Space& space, MemberMap members, int t);

  const Space& space() const { return space_; }
  const MemberMap& members() const { return members_; }
  const MultispreadParams& params() const { return params_; }
  int t() const { return params_.t; }
  std::int64_t lambda() const { return params_.lambda; }
  std::int64_t mu() const { return params_.mu; }
  std::int64_t n() const { return params_.n; }

  /// Number of members of dimension d, counted with multiplicity.
  std::int64_t count_dim(int d) const;
  /// "multispread (1,2;2,3)_2, n=5"
  std::string summary() const;

 private:
  Multispread(Space space, MemberMap members, MultispreadParams params)
      : space_(std::move(space)), members_(std::move(members)), params_(params) {}

  Space space_;
  MemberMap members_;
  MultispreadParams params_;
};

/// Every nonzero vector lies in exactly nu members (with multiplicity).
class MultifoldPartition {
 public:
  static MultifoldPartition verified(const Space& space, MemberMap members);

  const Space& space() const { return space_; }
  const MemberMap& members() const { return members_; }
  std::int64_t nu() const { return nu_; }
  std::int64_t size() const;
  std::int64_t count_dim(int d) const;
  /// "partition nu=1 of F_2^3, n=5"
  std::string summary() const;

 private:
  MultifoldPartition(Space space, MemberMap members, std::int64_t nu)
      : space_(std::move(space)), members_(std::move(members)), nu_(nu) {}

  Space space_;
  MemberMap members_;
  std::int64_t nu_;
};

/// Throws CoverageError(NonUniformFold) when the fold is not constant.
std::int64_t verify_partition(const Space& space, const MemberMap& members);

/// Member-wise orthogonal complement, multiplicities kept.
MemberMap complement_members(const Space& space, const MemberMap& members);

/// Complements of a multispread: a nu-fold partition with nu = n - q^(m-t) mu.
MultifoldPartition dualize(const Multispread& ms);
/// Inverse direction: complements of a partition read with pseudodimension t.
Multispread dualize(const MultifoldPartition& part, int t);

}  // namespace mspread
