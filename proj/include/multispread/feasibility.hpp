#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multispread/multispread.hpp"

namespace mspread {

/// Smallest nonnegative lambda with lambda = -mu(q^m - 1) mod (q^t - 1).
std::int64_t lambda_min_congruence(std::int64_t q, int m, int t, std::int64_t mu);

/// min(floor(log_q mu), t - 1).
int i_max(std::int64_t q, int t, std::int64_t mu);

/// Nonnegative b_0..b_imax with mu(q^m - 1) = sum b_i (q^t - q^i), the
/// lexicographically smallest one. Empty when no solution exists.
/// Throws Overflow when the numbers leave 64-bit range.
std::optional<std::vector<std::int64_t>> bi_decomposition(std::int64_t q, int m, int t,
                                                          std::int64_t mu);

/// Interval test: some integer n0 with mu(q^m-1)/(q^t-1) <= n0 <= mu(q^m-1)/(q^t-q^imax).
bool n0_interval_holds(std::int64_t q, int m, int t, std::int64_t mu);

enum class Status { Feasible, Infeasible, Unknown };

const char* status_name(Status s);

struct Verdict {
  Status status = Status::Unknown;
  /// Label of the deciding result, e.g. "theorem:th:t2"; empty for Unknown.
  std::string reason;
  /// Minimum feasible lambda, when it is known.
  std::optional<std::int64_t> lambda_min;
  /// The b_i decomposition when it was computed.
  std::vector<std::int64_t> b;
  std::string note;
};

/// Ingredients the planner combines. Each seed is a multispread with the
/// given parameters at ambient m0 (EMBED carries it to any m = m0 mod t).
enum class SeedKind {
  Zero,           // one 0-subspace
  Fold,           // fold_spread at the target m
  Projection,     // spread of F^{2t} projected `param` times
  OvalLadder,     // t = 2, m = 3, `param` switches along an oval
  SwitchChain,    // t = 3, m = 4: raised 2-spread switched up `param` times
  Desarguesian,   // t = 4, m = 6, s = `param`
  T45Ladder,      // q = 2, t = 4, m = 5, mu = `param`
  Catalog,        // embedded instance `name`
  FullSpace,      // t > m: the whole space
};

struct Seed {
  SeedKind kind = SeedKind::Zero;
  int m0 = 0;
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  std::int64_t param = 0;
  std::string name;

  std::string describe(std::int64_t q, int t) const;
};

struct PlanPart {
  Seed seed;
  std::int64_t count = 0;
};

/// How to assemble a multispread: the union of the parts, each embedded to
/// the target ambient. With `subfield_degree` l > 0 the parts live over
/// GF(q^l) at (t/l, m/l) and the result is read over GF(q).
struct Plan {
  MultispreadParams target;
  std::string reason;
  std::vector<PlanPart> parts;
  int subfield_degree = 0;

  std::int64_t total_lambda() const;
  std::int64_t total_mu() const;
};

/// Three-valued existence oracle. Without lambda it answers whether some
/// lambda works and reports the least one when known.
/// Throws UnsupportedQ for q that is not a prime power at most 2^10.
Verdict oracle(std::int64_t q, int m, int t, std::int64_t mu,
               std::optional<std::int64_t> lambda = std::nullopt);

/// The least feasible lambda when a characterization applies, else empty.
std::optional<std::int64_t> min_lambda_existence(std::int64_t q, int m, int t, std::int64_t mu);

/// A construction plan for exact parameters, when the oracle can back a
/// FEASIBLE answer with one. Without lambda the plan uses the least lambda
/// the planner reaches.
std::optional<Plan> make_plan(std::int64_t q, int m, int t, std::int64_t mu,
                              std::optional<std::int64_t> lambda = std::nullopt);

}  // namespace mspread
