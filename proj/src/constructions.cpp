#include "multispread/constructions.hpp"

#include <functional>
#include <map>
#include <optional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "multispread/catalog.hpp"
#include "multispread/errors.hpp"
#include "multispread/extension_field.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

namespace {

using i64 = std::int64_t;

Multispread verified_or_internal(const Space& space, MemberMap members, int t, const std::string& what) {
  try {
    return Multispread::verified(space, std::move(members), t);
  } catch (const CoverageError& e) {
    throw Error(Errc::InternalVerifyFailed, what + ": " + e.what());
  }
}

// F_q-span of the coset generators, multiplied by `factor` in GF(q^m).
Subspace scaled_span(const Space& sp, const ExtensionField& e, std::uint64_t factor,
                     const std::vector<std::uint64_t>& gens) {
  std::vector<Vec> rows;
  rows.reserve(gens.size());
  for (auto g : gens) rows.push_back(e.mul(factor, g));
  return sp.span(rows);
}

Multispread desarguesian_impl(const Field& field, int s) {
  const i64 q = field.order();
  const Space sp(field, 6);
  const auto e = ExtensionField::make(field, 6);
  const std::uint64_t alpha = e.primitive_element();
  const i64 q3 = q * q * q;
  const std::uint64_t beta = e.pow(alpha, static_cast<std::uint64_t>(q3 + 1));

  std::vector<Subspace> spread;
  for (i64 i = 0; i <= q3; ++i) {
    const std::uint64_t a = e.pow(alpha, static_cast<std::uint64_t>(i));
    spread.push_back(sp.span({a, e.mul(a, beta), e.mul(a, e.mul(beta, beta))}));
  }

  // kernel of x + x^(q^2) + x^(q^4)
  std::vector<Vec> kernel;
  const auto q2 = static_cast<std::uint64_t>(q * q);
  for (std::uint64_t x = 1; x < sp.size(); ++x) {
    const std::uint64_t y = e.pow(x, q2);
    const std::uint64_t z = e.pow(y, q2);
    if (e.add(x, e.add(y, z)) == 0) kernel.push_back(x);
  }
  const Subspace trace_kernel = sp.span(kernel);
  if (trace_kernel.dim() != 4)
    throw Error(Errc::InternalVerifyFailed, "trace kernel has dimension " + std::to_string(trace_kernel.dim()));

  const auto block_of = [&](const Subspace& t) {
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < spread.size(); ++i)
      if (sp.intersect(t, spread[i]).dim() == 2) block.push_back(i);
    return block;
  };

  std::vector<Subspace> chosen;
  std::set<std::size_t> used;
  std::set<Subspace> seen;
  const std::uint64_t order = sp.size() - 1;
  std::uint64_t scale = 1;
  for (std::uint64_t k = 0; k < order && static_cast<int>(chosen.size()) < s; ++k, scale = e.mul(scale, alpha)) {
    const Subspace cand = scaled_span(sp, e, scale, trace_kernel.basis());
    if (!seen.insert(cand).second) continue;
    const auto block = block_of(cand);
    if (static_cast<i64>(block.size()) != q + 1) continue;
    bool disjoint = true;
    for (auto b : block) disjoint = disjoint && used.count(b) == 0;
    if (!disjoint) continue;
    used.insert(block.begin(), block.end());
    chosen.push_back(cand);
  }
  if (static_cast<int>(chosen.size()) < s)
    throw Error(Errc::BlockDisjointnessFailed, "found only " + std::to_string(chosen.size()) +
                                                   " translates with pairwise disjoint blocks");

  MemberMap members;
  for (std::size_t i = 0; i < spread.size(); ++i)
    if (used.count(i) == 0) members[spread[i]] += 1;
  for (const auto& t : chosen) {
    std::set<Subspace> orbit;
    std::uint64_t b = 1;
    for (i64 i = 0; i < q3 - 1; ++i, b = e.mul(b, beta)) orbit.insert(scaled_span(sp, e, b, t.basis()));
    for (const auto& u : orbit) members[u] += 1;
  }
  return verified_or_internal(sp, std::move(members), 4, "desarguesian construction");
}

Subspace map_into(const Space& big, const Space& small, const Subspace& u, const std::vector<int>& columns) {
  std::vector<Vec> rows;
  for (Vec r : u.basis()) {
    Vec v = 0;
    for (int k = 0; k < small.m(); ++k) {
      const Elem c = small.coord(r, k);
      if (c != 0) v = big.add(v, big.scale(c, big.unit(columns[static_cast<std::size_t>(k)])));
    }
    rows.push_back(v);
  }
  return big.span(rows);
}

}  // namespace

Multispread fold_spread(const Field& field, int t, int m, std::int64_t mu) {
  if (t < 1 || t > m) throw Error(Errc::InvalidArgument, "fold_spread needs 1 <= t <= m");
  if (mu < 0) throw Error(Errc::InvalidArgument, "mu must be nonnegative");
  const i64 q = field.order();
  const int s = std::gcd(t, m);
  const i64 d = (ipow(q, t) - 1) / (ipow(q, s) - 1);
  if (mu % d != 0)
    throw Error(Errc::DivisibilityViolated,
                "mu=" + std::to_string(mu) + " is not divisible by (q^t-1)/(q^s-1)=" + std::to_string(d));
  const Space sp(field, m);
  MemberMap members;
  if (mu > 0) {
    const auto e = ExtensionField::make(field, m);
    const std::uint64_t gamma = e.primitive_element();
    const std::uint64_t units = sp.size() - 1;
    const std::uint64_t cosets = units / static_cast<std::uint64_t>(ipow(q, s) - 1);
    const std::uint64_t omega = e.pow(gamma, cosets);
    std::vector<std::uint64_t> gens;
    std::uint64_t wi = 1;
    for (int i = 0; i < s; ++i, wi = e.mul(wi, omega)) {
      std::uint64_t gj = 1;
      for (int j = 0; j < t / s; ++j, gj = e.mul(gj, gamma)) gens.push_back(e.mul(wi, gj));
    }
    std::uint64_t factor = 1;
    for (std::uint64_t k = 0; k < cosets; ++k, factor = e.mul(factor, gamma))
      members[scaled_span(sp, e, factor, gens)] += mu / d;
  }
  return verified_or_internal(sp, std::move(members), t, "fold spread");
}

Multispread unite(const Multispread& a, const Multispread& b) {
  if (!(a.space() == b.space()) || a.t() != b.t())
    throw Error(Errc::ParamMismatch, "union needs equal (q, m, t): " + a.params().to_string() + " vs " +
                                         b.params().to_string());
  MemberMap members = a.members();
  merge_members(members, b.members());
  return verified_or_internal(a.space(), std::move(members), a.t(), "union");
}

const char* lift_name(LiftKind kind) {
  switch (kind) {
    case LiftKind::AddZero:
      return "ADD_ZERO";
    case LiftKind::AddFold:
      return "ADD_FOLD";
    case LiftKind::Embed:
      return "EMBED";
    case LiftKind::Project:
      return "PROJECT";
    case LiftKind::RaisePdim:
      return "RAISE_PDIM";
    case LiftKind::Subfield:
      return "SUBFIELD";
  }
  return "?";
}

Multispread lift(const Multispread& ms, LiftKind kind) {
  const Space& sp = ms.space();
  const int t = ms.t();
  const int m = sp.m();
  const i64 q = sp.q();
  switch (kind) {
    case LiftKind::AddZero: {
      MemberMap members = ms.members();
      members[sp.zero()] += 1;
      return verified_or_internal(sp, std::move(members), t, "ADD_ZERO");
    }
    case LiftKind::AddFold: {
      if (t > m) throw Error(Errc::KindPreconditionFailed, "ADD_FOLD needs t <= m");
      const int s = std::gcd(t, m);
      return unite(ms, fold_spread(sp.field(), t, m, (ipow(q, t) - 1) / (ipow(q, s) - 1)));
    }
    case LiftKind::Embed: {
      const Space big(sp.field(), m + t);
      MemberMap members;
      if (t <= m) {
        const auto shift = static_cast<Vec>(ipow(q, t));
        for (const auto& [u, k] : ms.members()) {
          std::vector<Vec> rows;
          for (Vec r : u.basis()) rows.push_back(r * shift);
          members[big.span(rows)] += k;
        }
        if (ms.mu() > 0) {
          const auto e = ExtensionField::make(sp.field(), m);
          for (std::uint64_t a = 0; a < sp.size(); ++a) {
            std::vector<Vec> rows;
            Vec xj = 1;
            for (int j = 0; j < t; ++j, xj *= static_cast<Vec>(q)) rows.push_back(e.mul(a, xj) * shift + xj);
            members[big.span(rows)] += ms.mu();
          }
        }
        return verified_or_internal(big, std::move(members), t, "EMBED");
      }
      // t > m: rebuild from parameters over F^(2t), then project t - m times
      const i64 qd = ipow(q, t - m);
      const i64 w = ipow(q, t) - 1;
      const i64 base = (qd - 1) * (ms.mu() / qd);
      const i64 zeros = (ms.lambda() - base) / w;
      Multispread acc = fold_spread(sp.field(), t, 2 * t, ms.mu() / qd);
      MemberMap with_zeros = acc.members();
      if (zeros > 0) with_zeros[acc.space().zero()] += zeros;
      acc = verified_or_internal(acc.space(), std::move(with_zeros), t, "EMBED");
      for (int i = 0; i < t - m; ++i) acc = lift(acc, LiftKind::Project);
      return acc;
    }
    case LiftKind::Project: {
      if (m < 2) throw Error(Errc::KindPreconditionFailed, "PROJECT needs m >= 2");
      const Space small(sp.field(), m - 1);
      MemberMap members;
      for (const auto& [u, k] : ms.members()) {
        std::vector<Vec> rows;
        for (Vec r : u.basis()) rows.push_back(r / static_cast<Vec>(q));
        members[small.span(rows)] += k;
      }
      return verified_or_internal(small, std::move(members), t, "PROJECT");
    }
    case LiftKind::RaisePdim:
      return verified_or_internal(sp, ms.members(), t + 1, "RAISE_PDIM");
    case LiftKind::Subfield: {
      const Field& f = sp.field();
      if (f.is_prime_field()) throw Error(Errc::KindPreconditionFailed, "SUBFIELD needs a non-prime q");
      const int l = f.degree();
      const std::uint32_t p = f.characteristic();
      const Space small(Field::make(p, 1), l * m);
      MemberMap members;
      for (const auto& [u, k] : ms.members()) {
        std::vector<Vec> rows;
        Elem xi = 1;
        for (int i = 0; i < l; ++i, xi *= p)
          for (Vec r : u.basis()) rows.push_back(sp.scale(xi, r));
        members[small.span(rows)] += k;
      }
      return verified_or_internal(small, std::move(members), l * t, "SUBFIELD");
    }
  }
  throw Error(Errc::InvalidArgument, "unknown lift kind");
}

Multispread switch_up(const Multispread& ms, const Subspace& target) {
  const Space& sp = ms.space();
  const int t = ms.t();
  const int s = sp.m() - t;
  if (s < 1 || t - s < 0)
    throw Error(Errc::AmbientNotTPlusS, "switching needs m = t + s with 1 <= s <= t");
  sp.check(target);
  auto it = ms.members().find(target);
  if (it == ms.members().end() || target.dim() != t - s)
    throw Error(Errc::NoSuchMember, sp.to_string(target) + " is not a member of dimension " + std::to_string(t - s));

  std::vector<int> free_cols;
  {
    const auto piv = sp.pivots(target);
    std::set<int> ps(piv.begin(), piv.end());
    for (int c = 0; c < sp.m(); ++c)
      if (ps.count(c) == 0) free_cols.push_back(c);
  }
  const Space small(sp.field(), 2 * s);
  const auto spread = fold_spread(sp.field(), s, 2 * s, 1);

  MemberMap members = ms.members();
  if (--members[target] == 0) members.erase(target);
  for (const auto& [u, k] : spread.members()) {
    (void)k;
    members[sp.sum(target, map_into(sp, small, u, free_cols))] += 1;
  }
  return verified_or_internal(sp, std::move(members), t, "switch up");
}

Multispread switch_down(const Multispread& ms, const Subspace& core) {
  const Space& sp = ms.space();
  const int t = ms.t();
  const int s = sp.m() - t;
  if (ms.mu() == 0) throw Error(Errc::ConfigurationNotFound, "mu = 0 leaves nothing to switch");
  if (s < 1 || t - s < 0)
    throw Error(Errc::AmbientNotTPlusS, "switching needs m = t + s with 1 <= s <= t");
  sp.check(core);
  if (core.dim() != t - s)
    throw Error(Errc::ConfigurationNotFound, "core must have dimension t - s = " + std::to_string(t - s));

  std::vector<Subspace> through;
  for (const auto& [u, k] : ms.members())
    if (u.dim() == t && sp.includes(u, core)) through.push_back(u);
  const auto need = static_cast<std::size_t>(ipow(sp.q(), s) + 1);

  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == need) return true;
    for (std::size_t i = from; i < through.size(); ++i) {
      bool ok = true;
      for (auto j : pick) ok = ok && sp.intersect(through[i], through[j]) == core;
      if (!ok) continue;
      pick.push_back(i);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!rec(0))
    throw Error(Errc::ConfigurationNotFound, "no " + std::to_string(need) + " t-members meet pairwise in " +
                                                 sp.to_string(core));
  MemberMap members = ms.members();
  for (auto i : pick)
    if (--members[through[i]] == 0) members.erase(through[i]);
  members[core] += 1;
  return verified_or_internal(sp, std::move(members), t, "switch down");
}

Oval oval(const Field& field) {
  const Space sp(field, 3);
  Oval o;
  o.q = field.order();
  for (Elem x = 0; x < field.order(); ++x) o.points.push_back(sp.span({sp.from_coords({1, x, field.mul(x, x)})}));
  o.points.push_back(sp.span({sp.from_coords({0, 0, 1})}));
  for (std::size_t a = 0; a < o.points.size(); ++a)
    for (std::size_t b = a + 1; b < o.points.size(); ++b)
      for (std::size_t c = b + 1; c < o.points.size(); ++c)
        if (sp.sum(sp.sum(o.points[a], o.points[b]), o.points[c]).dim() != 3)
          throw Error(Errc::InternalVerifyFailed, "three oval points are collinear");
  return o;
}

Multispread desarguesian_46(const Field& field, int s) {
  const i64 q = field.order();
  if (s < 1 || s > q * q - q + 1)
    throw Error(Errc::SOutOfRange, "s must lie in [1, " + std::to_string(q * q - q + 1) + "]");
  return desarguesian_impl(field, s);
}

MultifoldPartition dual_partition_cor(const Field& field, int s) { return dualize(desarguesian_46(field, s)); }

namespace {

std::string params_text(i64 q, int m, int t, i64 lambda, i64 mu) {
  return MultispreadParams{static_cast<std::uint32_t>(q), m, t, lambda, mu, 0}.to_string();
}

Multispread build_seed(const Field& field, int t, int m, const Seed& seed) {
  switch (seed.kind) {
    case SeedKind::Zero: {
      const Space sp(field, m);
      return Multispread::verified(sp, to_member_map({sp.zero()}), t);
    }
    case SeedKind::Fold:
      return fold_spread(field, t, m, seed.mu);
    case SeedKind::FullSpace: {
      const Space sp(field, m);
      return Multispread::verified(sp, to_member_map({sp.full()}), t);
    }
    case SeedKind::Projection: {
      Multispread ms = fold_spread(field, t, 2 * t, 1);
      for (i64 i = 0; i < seed.param; ++i) ms = lift(ms, LiftKind::Project);
      return ms;
    }
    case SeedKind::OvalLadder: {
      const Space sp(field, 3);
      MemberMap doubled;
      for (const auto& u : sp.enumerate_subspaces(2)) doubled[u] = 2;
      Multispread ms = Multispread::verified(sp, std::move(doubled), 2);
      const auto o = oval(field);
      for (i64 l = 0; l < seed.param; ++l) ms = switch_down(ms, o.points[static_cast<std::size_t>(l)]);
      return ms;
    }
    case SeedKind::SwitchChain: {
      Multispread ms = lift(fold_spread(field, 2, 4, 1), LiftKind::RaisePdim);
      for (i64 i = 0; i < seed.param; ++i) {
        const Subspace* target = nullptr;
        for (const auto& [u, k] : ms.members())
          if (u.dim() == 2) {
            target = &u;
            break;
          }
        ms = switch_up(ms, *target);
      }
      return ms;
    }
    case SeedKind::Desarguesian:
      return desarguesian_impl(field, static_cast<int>(seed.param));
    case SeedKind::T45Ladder: {
      if (seed.param <= 12) {
        Multispread ms = lift(lift(fold_spread(field, 3, 6, 1), LiftKind::Project), LiftKind::RaisePdim);
        for (i64 i = 4; i < seed.param; ++i) {
          const Subspace* target = nullptr;
          for (const auto& [u, k] : ms.members())
            if (u.dim() == 3) {
              target = &u;
              break;
            }
          ms = switch_up(ms, *target);
        }
        return ms;
      }
      const Space sp(field, 5);
      Multispread ms = Multispread::verified(sp, to_member_map(sp.enumerate_subspaces(4)), 4);
      const auto cores = sp.enumerate_subspaces(3);
      for (i64 i = seed.param; i < 15; ++i) {
        bool done = false;
        for (const auto& c : cores) {
          try {
            ms = switch_down(ms, c);
            done = true;
            break;
          } catch (const Error& e) {
            if (e.code() != Errc::ConfigurationNotFound) throw;
          }
        }
        if (!done) throw Error(Errc::InternalVerifyFailed, "no switching core left");
      }
      return ms;
    }
    case SeedKind::Catalog: {
      const auto& entry = catalog_entry(seed.name);
      return *entry.multispread;
    }
  }
  throw Error(Errc::InvalidArgument, "unknown seed kind");
}

// Seeds depend only on (q, t, kind, param, name); cached per process.
Multispread cached_seed(const Field& field, int t, const Seed& seed) {
  using Key = std::tuple<std::uint64_t, int, int, int, i64, std::string>;
  static std::mutex mu;
  static std::map<Key, Multispread> cache;
  const Key key{field.order(), t, seed.m0, static_cast<int>(seed.kind), seed.param, seed.name};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Multispread ms = build_seed(field, t, seed.m0, seed);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, ms);
  return ms;
}

}  // namespace

Construction build_plan(const Plan& plan) {
  const auto& target = plan.target;
  std::vector<std::string> lines;
  std::optional<Multispread> result;
  if (plan.subfield_degree > 0) {
    const int l = plan.subfield_degree;
    Plan inner = plan;
    inner.subfield_degree = 0;
    inner.target.q = static_cast<std::uint32_t>(ipow(target.q, l));
    inner.target.m = target.m / l;
    inner.target.t = target.t / l;
    auto sub = build_plan(inner);
    lines = std::move(sub.plan);
    result = lift(sub.multispread, LiftKind::Subfield);
    lines.push_back("read over GF(" + std::to_string(target.q) + ") as " + result->params().to_string() +
                    " (lemma:l:rec(f))");
  } else {
    const Field field = Field::of_order(target.q);
    const Space sp(field, target.m);
    const int t = target.t;
    lines.push_back(plan.reason + " for " + params_text(target.q, target.m, t, target.lambda, target.mu));
    MemberMap members;
    for (const auto& part : plan.parts) {
      const Seed& seed = part.seed;
      std::ostringstream line;
      line << part.count << " x " << seed.describe(target.q, t);
      if (seed.kind == SeedKind::Zero) {
        members[sp.zero()] += part.count;
      } else if (seed.kind == SeedKind::Fold) {
        merge_members(members, fold_spread(field, t, target.m, seed.mu * part.count).members());
      } else {
        Multispread ms = cached_seed(field, t, seed);
        int steps = 0;
        while (ms.space().m() < target.m) {
          ms = lift(ms, LiftKind::Embed);
          ++steps;
        }
        if (steps > 0) line << ", embedded " << steps << "x to m=" << target.m << " (lemma:l:rec(c))";
        merge_members(members, ms.members(), part.count);
      }
      lines.push_back(line.str());
    }
    if (plan.parts.size() > 1) lines.push_back("union of the parts (lemma:l:sum)");
    result = verified_or_internal(sp, std::move(members), t, "recipe");
  }
  const auto& got = result->params();
  if (got.lambda != target.lambda || got.mu != target.mu || got.m != target.m || got.t != target.t)
    throw Error(Errc::InternalVerifyFailed, "built " + got.to_string() + " instead of " + target.to_string());
  return Construction{std::move(*result), std::move(lines)};
}

Construction recipe(std::int64_t q, int m, int t, std::int64_t lambda, std::int64_t mu) {
  const auto v = oracle(q, m, t, mu, lambda);
  if (v.status != Status::Feasible)
    throw Error(Errc::NotCovered, params_text(q, m, t, lambda, mu) + " is " + status_name(v.status) +
                                      (v.reason.empty() ? "" : " (" + v.reason + ")"));
  const auto plan = make_plan(q, m, t, mu, lambda);
  if (!plan) throw Error(Errc::InternalVerifyFailed, "oracle and planner disagree");
  return build_plan(*plan);
}

}  // namespace mspread
