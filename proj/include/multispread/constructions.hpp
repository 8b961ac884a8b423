#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multispread/feasibility.hpp"
#include "multispread/field.hpp"
#include "multispread/multispread.hpp"

namespace mspread {

/// (0, mu; t, m)_q from the cosets gamma^k C of a t-subspace C that is
/// closed under GF(q^s), s = gcd(t, m), inside GF(q^m).
/// Throws DivisibilityViolated unless (q^t-1)/(q^s-1) divides mu.
Multispread fold_spread(const Field& field, int t, int m, std::int64_t mu);

/// Multiset sum; parameters add. Throws ParamMismatch unless (q, m, t) agree.
Multispread unite(const Multispread& a, const Multispread& b);

enum class LiftKind {
  AddZero,    // (lambda + q^t - 1, mu)
  AddFold,    // (lambda, mu + (q^t-1)/(q^s-1))
  Embed,      // m -> m + t
  Project,    // drop the last coordinate: (lambda + (q-1)mu, q mu; t, m-1)
  RaisePdim,  // t -> t + 1: (q lambda + (q-1)n, q mu)
  Subfield,   // GF(p^l) -> GF(p): (lambda, mu; l t, l m)_p
};

const char* lift_name(LiftKind kind);

/// Throws KindPreconditionFailed when the lift does not apply.
Multispread lift(const Multispread& ms, LiftKind kind);

/// m = t + s: replaces one copy of the (t-s)-member `target` by q^s + 1
/// t-subspaces through it that tile its complement once.
/// Throws AmbientNotTPlusS or NoSuchMember.
Multispread switch_up(const Multispread& ms, const Subspace& target);

/// m = t + s: replaces q^s + 1 distinct t-members meeting pairwise in
/// `core` by `core`. Throws ConfigurationNotFound.
Multispread switch_down(const Multispread& ms, const Subspace& core);

/// Conic {(1, x, x^2)} plus (0, 0, 1) in PG(2, q).
struct Oval {
  std::uint32_t q = 2;
  std::vector<Subspace> points;
};

Oval oval(const Field& field);

/// ((q^2-q+1-s)(q^2-1), q+s; 4, 6)_q from the Desarguesian spread and s
/// Singer translates of the kernel of the trace onto GF(q^2), 1 <= s <= q^2-q+1.
/// Throws SOutOfRange or BlockDisjointnessFailed.
Multispread desarguesian_46(const Field& field, int s);

/// Orthogonal complements of desarguesian_46: a partition of F_q^6 into
/// (q^2+q+1)s 2-subspaces and q^3+1-(q+1)s 3-subspaces.
MultifoldPartition dual_partition_cor(const Field& field, int s);

struct Construction {
  Multispread multispread;
  /// One line per step, in application order.
  std::vector<std::string> plan;
};

/// Builds exactly (lambda, mu; t, m)_q following the oracle's plan.
/// Throws NotCovered when the oracle does not answer FEASIBLE and
/// InternalVerifyFailed when the result does not verify as requested.
Construction recipe(std::int64_t q, int m, int t, std::int64_t lambda, std::int64_t mu);

/// Executes a plan from make_plan.
Construction build_plan(const Plan& plan);

}  // namespace mspread
