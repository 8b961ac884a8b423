#include "multispread/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr i64 kMaxQ = 1024;
constexpr i64 kMaxInternalQ = i64{1} << 20;
constexpr i64 kResidueLimit = i64{1} << 22;
constexpr i64 kDpLimit = i64{4} << 20;

void validate(i64 q, int m, int t, i64 mu, std::optional<i64> lambda, i64 max_q) {
  if (q < 2 || q > max_q || prime_power(static_cast<std::uint64_t>(q)).p == 0)
    throw Error(Errc::UnsupportedQ,
                std::to_string(q) + " is not a prime power in [2, " + std::to_string(max_q) + "]");
  if (m < 1 || t < 1) throw Error(Errc::InvalidArgument, "m and t must be positive");
  if (mu < 0) throw Error(Errc::InvalidArgument, "mu must be nonnegative");
  if (lambda && *lambda < 0) throw Error(Errc::InvalidArgument, "lambda must be nonnegative");
}

// q^e as int128, or -1 beyond 2^100.
i128 wide_pow(i64 q, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= q;
    if (r > (i128{1} << 100)) return -1;
  }
  return r;
}

i64 gaussian_d(i64 q, int t, int m) {
  const int s = std::gcd(t, m);
  return (ipow(q, t) - 1) / (ipow(q, s) - 1);
}

// Minimum total weight per residue class mod `mod` using the given coin weights.
std::vector<i64> residue_distances(i64 mod, const std::vector<i64>& coins) {
  const i64 inf = std::numeric_limits<i64>::max();
  std::vector<i64> dist(static_cast<std::size_t>(mod), inf);
  dist[0] = 0;
  using Item = std::pair<i64, i64>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, 0});
  while (!pq.empty()) {
    auto [d, r] = pq.top();
    pq.pop();
    if (d != dist[static_cast<std::size_t>(r)]) continue;
    for (i64 c : coins) {
      const i64 nr = (r + c) % mod;
      const i64 nd = d + c;
      if (nd < dist[static_cast<std::size_t>(nr)]) {
        dist[static_cast<std::size_t>(nr)] = nd;
        pq.push({nd, nr});
      }
    }
  }
  return dist;
}

struct FoldInfo {
  int s;
  i64 d;
};

std::string theorem_for(i64 q, int m, int t) {
  const int r = m % t;
  if (t == 2 && m >= 2) return "theorem:th:t2";
  if (t == 3 && r == 1 && m >= 4) return "theorem:th:t3m4";
  if (t == 3 && r == 2 && m >= 5 && (q == 2 || q == 3)) return "theorem:th:t=3m=4";
  if (t == 4 && r == 2 && m >= 6) return "theorem:th:t=4m=6";
  if (q == 2 && t == 4 && r == 3 && m >= 7) return "theorem:th:t=4m=7";
  if (q == 2 && t == 4 && r == 1 && m >= 5) return "theorem:th:t=4m=5";
  return {};
}

struct CatalogSeed {
  i64 q;
  int t;
  int m0;
  i64 lambda;
  i64 mu;
  const char* name;
};

constexpr CatalogSeed kCatalogSeeds[] = {
    {2, 3, 5, 5, 3, "X1"},     {3, 3, 5, 20, 4, "q3-m5-l20-mu4"},  {3, 3, 5, 12, 5, "q3-m5-l12-mu5"},
    {2, 4, 7, 9, 3, "q2-m7-l9-mu3"},    {2, 4, 9, 13, 2, "q2-m9-l13-mu2"},  {2, 4, 9, 12, 3, "q2-m9-l12-mu3"},
};

// Seeds with mu > 0 usable at (q, m, t), t < m, t not dividing m; folds excluded.
std::vector<Seed> seeds_for(i64 q, int m, int t) {
  std::vector<Seed> out;
  const int r = m % t;
  const auto fits = [&](int m0) { return m >= m0 && (m - m0) % t == 0; };

  {
    const int j = t - r;
    const int m0 = 2 * t - j;
    if (fits(m0)) out.push_back({SeedKind::Projection, m0, ipow(q, j) - 1, ipow(q, j), j, {}});
  }
  if (t == 2 && fits(3)) {
    for (i64 l = 1; l <= q; ++l)
      out.push_back({SeedKind::OvalLadder, 3, (q - 1) * l, 2 * q + 2 - l, l, {}});
  }
  if (t == 3 && fits(4)) {
    for (i64 i = 0; i <= q * q + 1; ++i)
      out.push_back({SeedKind::SwitchChain, 4, (q * q + 1 - i) * (q - 1), q + i, i, {}});
  }
  if (t == 4 && fits(6)) {
    for (i64 s = 0; s <= q * q - q + 1; ++s)
      out.push_back({SeedKind::Desarguesian, 6, (q * q - q + 1 - s) * (q * q - 1), q + s, s, {}});
  }
  if (q == 2 && t == 4 && fits(5)) {
    for (i64 mu = 4; mu <= 15; ++mu) out.push_back({SeedKind::T45Ladder, 5, 15 - mu, mu, mu, {}});
  }
  for (const auto& c : kCatalogSeeds)
    if (c.q == q && c.t == t && fits(c.m0))
      out.push_back({SeedKind::Catalog, c.m0, c.lambda, c.mu, 0, c.name});
  return out;
}

// Unbounded knapsack: reach exactly `mu` with minimum total lambda. Folds
// (mu = d, lambda = 0) are always available.
std::optional<std::vector<PlanPart>> plan_parts(const std::vector<Seed>& seeds, const Seed& fold,
                                                i64 mu) {
  i64 max_mu = 0;
  for (auto& s : seeds) max_mu = std::max(max_mu, s.mu);
  const i64 d = fold.mu;
  const i64 bound = checked_add(checked_mul(d - 1, max_mu), d);
  i64 size = std::min(mu, bound);
  if (size > kDpLimit) return std::nullopt;

  std::vector<const Seed*> items;
  items.push_back(&fold);
  for (auto& s : seeds) items.push_back(&s);

  const i64 inf = std::numeric_limits<i64>::max();
  std::vector<i64> best(static_cast<std::size_t>(size + 1), inf);
  std::vector<int> choice(static_cast<std::size_t>(size + 1), -1);
  best[0] = 0;
  for (i64 x = 1; x <= size; ++x) {
    for (std::size_t k = 0; k < items.size(); ++k) {
      const i64 w = items[k]->mu;
      if (w > x || best[static_cast<std::size_t>(x - w)] == inf) continue;
      const i64 c = best[static_cast<std::size_t>(x - w)] + items[k]->lambda;
      if (c < best[static_cast<std::size_t>(x)]) {
        best[static_cast<std::size_t>(x)] = c;
        choice[static_cast<std::size_t>(x)] = static_cast<int>(k);
      }
    }
  }

  i64 start = mu;
  i64 extra_folds = 0;
  if (mu > size) {
    // Same residue mod d, inside (size - d, size].
    start = size - ((size - mu) % d + d) % d;
    extra_folds = (mu - start) / d;
  }
  if (best[static_cast<std::size_t>(start)] == inf) return std::nullopt;

  std::vector<i64> counts(items.size(), 0);
  for (i64 x = start; x > 0;) {
    const int k = choice[static_cast<std::size_t>(x)];
    ++counts[static_cast<std::size_t>(k)];
    x -= items[static_cast<std::size_t>(k)]->mu;
  }
  counts[0] += extra_folds;
  std::vector<PlanPart> parts;
  for (std::size_t k = 0; k < items.size(); ++k)
    if (counts[k] > 0) parts.push_back({*items[k], counts[k]});
  return parts;
}

Verdict make_verdict(Status s, std::string reason, std::optional<i64> lmin = std::nullopt) {
  Verdict v;
  v.status = s;
  v.reason = std::move(reason);
  v.lambda_min = lmin;
  return v;
}

// Whether a combined b-vector exists that also matches lambda: the dimension
// classes 1..imax contribute q^i - 1 each to lambda, 0-subspaces q^t - 1.
// Returns empty when the check is too large to run.
std::optional<bool> combined_ness(i64 q, int m, int t, i64 mu, i64 lambda) {
  const int imx = i_max(q, t, mu);
  const i128 qm = wide_pow(q, m);
  if (qm < 0) return std::nullopt;
  const i128 target = i128{mu} * (qm - 1);
  const i64 w = ipow(q, t) - 1;
  if (lambda > kResidueLimit) return std::nullopt;
  std::vector<i64> costs;
  for (int i = 1; i <= imx; ++i) costs.push_back(ipow(q, i) - 1);
  // fewest coins for each exact lambda part
  const i64 inf = std::numeric_limits<i64>::max();
  std::vector<i64> coins(static_cast<std::size_t>(lambda + 1), inf);
  coins[0] = 0;
  for (i64 c = 1; c <= lambda; ++c)
    for (i64 v : costs)
      if (v <= c && coins[static_cast<std::size_t>(c - v)] != inf)
        coins[static_cast<std::size_t>(c)] =
            std::min(coins[static_cast<std::size_t>(c)], coins[static_cast<std::size_t>(c - v)] + 1);
  for (i64 c = lambda % w; c <= lambda; c += w) {
    const i64 k = coins[static_cast<std::size_t>(c)];
    if (k == inf) continue;
    // weight of the nonzero-dim, non-t members is k*w - c; b_0 absorbs the rest
    if (i128{k} * w - c <= target) return true;
  }
  return false;
}

struct Decider {
  bool allow_reduction = true;

  Verdict decide(i64 q, int m, int t, i64 mu, std::optional<i64> lambda, Plan* plan) const {
    const i64 w = ipow(q, t) - 1;
    MultispreadParams target{static_cast<std::uint32_t>(q), m, t, lambda.value_or(0), mu, 0};
    const auto finish = [&](Verdict v, std::vector<PlanPart> parts) {
      if (plan && v.status == Status::Feasible) {
        plan->target = target;
        plan->target.lambda = lambda ? *lambda : *v.lambda_min;
        plan->reason = v.reason;
        plan->parts = std::move(parts);
        i64 lam = 0;
        for (auto& p : plan->parts) lam += p.seed.lambda * p.count;
        const i64 zeros = (plan->target.lambda - lam) / w;
        if (zeros > 0) plan->parts.push_back({Seed{SeedKind::Zero, m, w, 0, 0, {}}, zeros});
        plan->target.n = 0;
      }
      return v;
    };

    if (mu == 0) {
      if (lambda && *lambda % w != 0)
        return make_verdict(Status::Infeasible, "proposition:c:ness");
      return finish(make_verdict(Status::Feasible, "lemma:l:rec", i64{0}), {});
    }

    if (t > m) {
      const i64 qd = ipow(q, t - m);
      if (mu % qd != 0) {
        auto v = make_verdict(Status::Infeasible, "proposition:p:t>m");
        v.note = "mu must be divisible by q^(t-m) = " + std::to_string(qd);
        return v;
      }
      const i64 base = (qd - 1) * (mu / qd);
      if (lambda && (*lambda < base || (*lambda - base) % w != 0))
        return make_verdict(Status::Infeasible, "proposition:p:t>m", base);
      Seed full{SeedKind::FullSpace, m, qd - 1, qd, 0, {}};
      return finish(make_verdict(Status::Feasible, "proposition:p:t>m", base),
                    {{full, mu / qd}});
    }

    const i64 floor = lambda_min_congruence(q, m, t, mu);
    if (lambda && *lambda % w != floor) {
      auto v = make_verdict(Status::Infeasible, "proposition:c:ness");
      v.note = "lambda must be " + std::to_string(floor) + " mod " + std::to_string(w);
      return v;
    }

    const i64 d = gaussian_d(q, t, m);
    const Seed fold{SeedKind::Fold, m, 0, d, 0, {}};
    const auto fold_only = [&](const std::string& reason) {
      if (mu % d != 0) {
        auto v = make_verdict(Status::Infeasible, reason);
        v.note = "mu must be divisible by " + std::to_string(d);
        return v;
      }
      return finish(make_verdict(Status::Feasible, reason, i64{0}), {{fold, mu / d}});
    };
    if (lambda && *lambda == 0) return fold_only("lemma:l:fold");
    if (mu < q) return fold_only("proposition:p:mu<q");
    if (m % t == 0) return fold_only("proposition:p:m0");

    if (q == 2 && m == 5 && t == 4 && (mu == 2 || mu == 3))
      return make_verdict(Status::Infeasible, "corollary:c:l2452");

    Verdict filtered;
    bool filters_ran = false;
    try {
      if (!n0_interval_holds(q, m, t, mu)) return make_verdict(Status::Infeasible, "corollary:p:ness-");
      auto b = bi_decomposition(q, m, t, mu);
      if (!b) return make_verdict(Status::Infeasible, "proposition:p:ness");
      filtered.b = *b;
      filters_ran = true;
    } catch (const Error& e) {
      if (e.code() != Errc::Overflow) throw;
    }
    if (lambda && filters_ran) {
      auto c = combined_ness(q, m, t, mu, *lambda);
      if (c && !*c) {
        auto v = make_verdict(Status::Infeasible, "proposition:p:ness");
        v.b = filtered.b;
        v.note = "no dimension profile matches lambda";
        return v;
      }
    }

    const auto seeds = seeds_for(q, m, t);
    const std::string theorem = theorem_for(q, m, t);
    std::optional<std::vector<PlanPart>> parts;
    const bool want_parts = plan != nullptr || theorem.empty();
    if (want_parts) parts = plan_parts(seeds, fold, mu);
    i64 reach = std::numeric_limits<i64>::max();
    if (parts) {
      reach = 0;
      for (auto& p : *parts) reach += p.seed.lambda * p.count;
    }

    if (!theorem.empty()) {
      auto v = make_verdict(Status::Feasible, theorem, floor);
      v.b = filtered.b;
      if (plan && (!parts || reach > lambda.value_or(floor)))
        throw Error(Errc::InternalVerifyFailed, "no seed plan for " + theorem + " cell " +
                                                    MultispreadParams{static_cast<std::uint32_t>(q), m, t,
                                                                      lambda.value_or(floor), mu, 0}
                                                        .to_string());
      return finish(v, parts ? *parts : std::vector<PlanPart>{});
    }

    if (parts && (!lambda || reach <= *lambda)) {
      auto v = make_verdict(Status::Feasible, "lemma:l:sum");
      v.b = filtered.b;
      if (reach == floor) {
        v.lambda_min = floor;
      } else if (!lambda) {
        v.note = "constructible at lambda=" + std::to_string(reach) + ", congruence floor " +
                 std::to_string(floor);
      }
      if (plan) {
        if (!lambda) target.lambda = reach;
        plan->target = target;
        plan->reason = v.reason;
        plan->parts = *parts;
        const i64 zeros = (target.lambda - reach) / w;
        if (zeros > 0) plan->parts.push_back({Seed{SeedKind::Zero, m, w, 0, 0, {}}, zeros});
      }
      return v;
    }

    if (allow_reduction) {
      const auto pp = prime_power(static_cast<std::uint64_t>(q));
      Decider inner{false};
      if (pp.l == 1) {
        const int g = std::gcd(t, m);
        for (int l = 2; l <= g; ++l) {
          if (g % l != 0) continue;
          const i128 ql = wide_pow(q, l);
          if (ql < 0 || ql > kMaxInternalQ) break;
          Plan sub;
          auto v = inner.decide(static_cast<i64>(ql), m / l, t / l, mu, lambda, plan ? &sub : nullptr);
          if (v.status != Status::Feasible) continue;
          auto out = make_verdict(Status::Feasible, "lemma:l:rec");
          out.b = filtered.b;
          if (v.lambda_min && *v.lambda_min == floor) out.lambda_min = floor;
          out.note = "read over GF(" + std::to_string(q) + ") from GF(" + std::to_string(static_cast<i64>(ql)) +
                     ") via " + v.reason;
          if (plan) {
            *plan = std::move(sub);
            plan->target.q = static_cast<std::uint32_t>(q);
            plan->target.m = m;
            plan->target.t = t;
            plan->subfield_degree = l;
            plan->reason = out.reason;
          }
          return out;
        }
      } else {
        const i64 p = pp.p;
        auto v = inner.decide(p, pp.l * m, pp.l * t, mu, lambda, nullptr);
        if (v.status == Status::Infeasible) {
          auto out = make_verdict(Status::Infeasible, v.reason);
          out.note = "the GF(" + std::to_string(p) + ") image under lemma:l:rec(f) is infeasible";
          return out;
        }
      }
    }

    auto v = make_verdict(Status::Unknown, {});
    v.b = filtered.b;
    v.note = "not covered by a characterization or a known construction";
    return v;
  }
};

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Feasible:
      return "FEASIBLE";
    case Status::Infeasible:
      return "INFEASIBLE";
    case Status::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::int64_t lambda_min_congruence(std::int64_t q, int m, int t, std::int64_t mu) {
  const i64 w = ipow(q, t) - 1;
  if (w == 0) return 0;
  const i64 qm1 = mod_floor(powmod(q, m, w) - 1, w);
  const i64 prod = static_cast<i64>((i128{mu % w} * qm1) % w);
  return mod_floor(-prod, w);
}

int i_max(std::int64_t q, int t, std::int64_t mu) {
  int e = 0;
  i64 pw = q;
  while (pw <= mu) {
    ++e;
    if (pw > std::numeric_limits<i64>::max() / q) break;
    pw *= q;
  }
  return std::min(e, t - 1);
}

std::optional<std::vector<std::int64_t>> bi_decomposition(std::int64_t q, int m, int t,
                                                          std::int64_t mu) {
  if (t > m || mu < 1) throw Error(Errc::InvalidArgument, "bi_decomposition needs t <= m and mu >= 1");
  const int imx = i_max(q, t, mu);
  const i64 qt = ipow(q, t);
  const i64 target = checked_mul(mu, ipow(q, m) - 1);
  std::vector<i64> w(static_cast<std::size_t>(imx + 1));
  for (int i = 0; i <= imx; ++i) w[static_cast<std::size_t>(i)] = qt - ipow(q, i);
  const i64 wmin = w.back();
  if (wmin > kResidueLimit) throw Error(Errc::Overflow, "residue table too large");

  // dist[k][r]: least value = r mod wmin representable by coins k..imx
  std::vector<std::vector<i64>> dist(static_cast<std::size_t>(imx + 1));
  for (int k = 0; k <= imx; ++k) {
    std::vector<i64> coins(w.begin() + k, w.end());
    dist[static_cast<std::size_t>(k)] = residue_distances(wmin, coins);
  }
  const auto representable = [&](int k, i64 x) {
    const i64 dd = dist[static_cast<std::size_t>(k)][static_cast<std::size_t>(x % wmin)];
    return dd != std::numeric_limits<i64>::max() && dd <= x;
  };
  if (!representable(0, target)) return std::nullopt;

  std::vector<i64> b(static_cast<std::size_t>(imx + 1), 0);
  i64 rest = target;
  for (int i = 0; i < imx; ++i) {
    const i64 wi = w[static_cast<std::size_t>(i)];
    i64 chosen = -1;
    for (i64 bi = 0; bi <= std::min(rest / wi, wmin); ++bi) {
      if (representable(i + 1, rest - bi * wi)) {
        chosen = bi;
        break;
      }
    }
    if (chosen < 0) return std::nullopt;
    b[static_cast<std::size_t>(i)] = chosen;
    rest -= chosen * wi;
  }
  if (rest % wmin != 0) return std::nullopt;
  b.back() = rest / wmin;
  return b;
}

bool n0_interval_holds(std::int64_t q, int m, int t, std::int64_t mu) {
  const int imx = i_max(q, t, mu);
  const i128 qm = wide_pow(q, m);
  if (qm < 0) throw Error(Errc::Overflow, "q^m too large");
  const i128 num = i128{mu} * (qm - 1);
  const i128 lo_den = wide_pow(q, t) - 1;
  const i128 hi_den = wide_pow(q, t) - wide_pow(q, imx);
  const i128 lo = (num + lo_den - 1) / lo_den;
  const i128 hi = num / hi_den;
  return lo <= hi;
}

Verdict oracle(std::int64_t q, int m, int t, std::int64_t mu, std::optional<std::int64_t> lambda) {
  validate(q, m, t, mu, lambda, kMaxQ);
  return Decider{}.decide(q, m, t, mu, lambda, nullptr);
}

std::optional<std::int64_t> min_lambda_existence(std::int64_t q, int m, int t, std::int64_t mu) {
  auto v = oracle(q, m, t, mu);
  if (v.status != Status::Feasible) return std::nullopt;
  return v.lambda_min;
}

std::optional<Plan> make_plan(std::int64_t q, int m, int t, std::int64_t mu,
                              std::optional<std::int64_t> lambda) {
  validate(q, m, t, mu, lambda, kMaxQ);
  Plan plan;
  auto v = Decider{}.decide(q, m, t, mu, lambda, &plan);
  if (v.status != Status::Feasible) return std::nullopt;
  return plan;
}

std::int64_t Plan::total_lambda() const {
  i64 r = 0;
  for (auto& p : parts) r += p.seed.lambda * p.count;
  return r;
}

std::int64_t Plan::total_mu() const {
  i64 r = 0;
  for (auto& p : parts) r += p.seed.mu * p.count;
  return r;
}

std::string Seed::describe(std::int64_t q, int t) const {
  std::ostringstream os;
  const auto params = [&] {
    return "(" + std::to_string(lambda) + "," + std::to_string(mu) + ";" + std::to_string(t) + "," +
           std::to_string(m0) + ")_" + std::to_string(q);
  };
  switch (kind) {
    case SeedKind::Zero:
      os << "0-subspace (lemma:l:rec(a))";
      break;
    case SeedKind::Fold:
      os << mu << "-fold spread (lemma:l:fold)";
      break;
    case SeedKind::Projection:
      os << params() << " = spread of F^" << 2 * t << " projected " << param << "x (lemma:l:rec(d))";
      break;
    case SeedKind::OvalLadder:
      os << params() << " = doubled planes switched down at " << param << " oval points (lemma:l:t-1)";
      break;
    case SeedKind::SwitchChain:
      os << params() << " = raised 2-spread (lemma:l:rec(e)) switched up " << param << "x (lemma:l:t+1)";
      break;
    case SeedKind::Desarguesian:
      os << params() << " = Desarguesian construction with s=" << param << " (theorem:th:des)";
      break;
    case SeedKind::T45Ladder:
      if (param <= 12)
        os << params() << " = raised (1,2;3,5)_2 switched up " << param - 4 << "x (lemma:l:t+1)";
      else
        os << params() << " = all 4-subspaces switched down " << 15 - param << "x (lemma:l:t-1)";
      break;
    case SeedKind::Catalog:
      os << params() << " = catalog " << name;
      break;
    case SeedKind::FullSpace:
      os << "whole space (proposition:p:t>m)";
      break;
  }
  return os.str();
}

}  // namespace mspread
