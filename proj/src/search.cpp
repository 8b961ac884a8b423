#include "multispread/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

using i64 = std::int64_t;

const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "FOUND";
    case SearchOutcome::Exhausted: return "EXHAUSTED";
    case SearchOutcome::Budget: return "BUDGET";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Orbits

OrbitSystem::OrbitSystem(Space space, ExtensionField field, std::uint64_t generator, std::uint64_t order)
    : space_(std::move(space)), field_(std::move(field)), generator_(generator), order_(order) {}

Subspace OrbitSystem::image(const Subspace& u, std::uint64_t j) const {
  const auto factor = field_.pow(generator_, j);
  std::vector<Vec> rows;
  rows.reserve(u.basis().size());
  for (Vec r : u.basis()) rows.push_back(field_.mul(factor, r));
  return space_.span(rows);
}

std::vector<Subspace> OrbitSystem::expand(const Subspace& u) const {
  std::vector<Subspace> out{u};
  for (std::uint64_t j = 1; j < order_; ++j) {
    Subspace w = image(u, j);
    if (w == u) break;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::pair<std::size_t, i64>> OrbitSystem::profile(const SubspaceOrbit& o) const {
  std::map<std::size_t, i64> hits;
  space_.for_each_vector(o.representative, [&](Vec v) {
    if (v != 0) ++hits[vector_orbit_of(v)];
  });
  // |X cap U| members of the orbit pass through a fixed x, divided by the stabilizer.
  const auto stab = static_cast<i64>(order_ / o.size);
  std::vector<std::pair<std::size_t, i64>> out;
  for (auto [x, c] : hits) out.emplace_back(x, c / stab);
  return out;
}

OrbitSystem singer_orbits(std::uint32_t q, int m, std::uint64_t k, const std::vector<int>& dims) {
  const Space sp = Space::over(q, m);
  const std::uint64_t units = sp.size() - 1;
  if (k == 0 || units % k != 0)
    throw Error(Errc::OrderNotDividing,
                std::to_string(k) + " does not divide q^m - 1 = " + std::to_string(units));
  if (sp.size() > (std::uint64_t{1} << 20)) throw Error(Errc::AmbientTooLarge, "q^m exceeds 2^20");
  auto ext = ExtensionField::make(sp.field(), m);
  const auto g = ext.pow(ext.primitive_element(), units / k);
  OrbitSystem sys(sp, ext, g, k);

  sys.orbit_index_.assign(sp.size(), 0);
  std::vector<char> seen(sp.size(), 0);
  for (Vec v = 1; v < sp.size(); ++v) {
    if (seen[v]) continue;
    const auto idx = static_cast<std::uint32_t>(sys.vector_orbits_.size());
    sys.vector_orbits_.push_back(v);
    Vec x = v;
    do {
      seen[x] = 1;
      sys.orbit_index_[x] = idx;
      x = ext.mul(g, x);
    } while (x != v);
  }

  for (int d : dims) {
    sp.for_each_subspace(d, [&](const Subspace& u) {
      std::uint64_t size = 1;
      for (std::uint64_t j = 1; j < k; ++j) {
        const Subspace w = sys.image(u, j);
        if (w < u) return;
        if (w == u) break;
        ++size;
      }
      sys.orbits_.push_back({u, size});
    });
  }
  std::sort(sys.orbits_.begin(), sys.orbits_.end(),
            [](const SubspaceOrbit& a, const SubspaceOrbit& b) { return a.representative < b.representative; });
  return sys;
}

// ---------------------------------------------------------------------------
// Counting

namespace {

struct Counting {
  i64 q, t, m, w;  // w = q^t - 1
  std::vector<i64> cost;     // lambda per member of dim d, d = 0..t
  std::vector<char> usable;  // dim can appear at all
};

Counting counting_for(const SearchSpec& s) {
  Counting c{s.q, s.t, s.m, ipow(s.q, s.t) - 1, {}, {}};
  c.cost.resize(static_cast<std::size_t>(s.t) + 1);
  c.usable.resize(static_cast<std::size_t>(s.t) + 1);
  for (int d = 0; d <= s.t; ++d) {
    c.cost[static_cast<std::size_t>(d)] = ipow(s.q, s.t - d) - 1;
    const bool fits = d == 0 ? s.lambda >= c.w : ipow(s.q, s.t - d) <= s.mu;
    c.usable[static_cast<std::size_t>(d)] = fits && c.cost[static_cast<std::size_t>(d)] <= s.lambda;
  }
  return c;
}

std::string dims_text(const std::map<int, i64>& dims) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto [d, k] : dims) {
    os << (first ? "" : ",") << d << ":" << k;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

void check_dims(const SearchSpec& spec) {
  if (!spec.dims) return;
  const auto& dims = *spec.dims;
  const Counting c = counting_for(spec);
  const std::string where = MultispreadParams{spec.q, spec.m, spec.t, spec.lambda, spec.mu, 0}.to_string() +
                            " with dims " + dims_text(dims);
  for (auto [d, k] : dims) {
    if (d < 0 || d > spec.t || k < 0)
      throw Error(Errc::SpecInconsistent, where + ": dimension or count out of range");
    if (k > 0 && !c.usable[static_cast<std::size_t>(d)])
      throw Error(Errc::SpecInconsistent, where + ": no member of dimension " + std::to_string(d) + " can occur");
  }
  const i64 total = checked_mul(spec.mu, ipow(spec.q, spec.m) - 1);
  // Free counts of dimensions below t range over [0, lambda / cost]; the
  // mu identity then fixes the count of t-subspaces.
  std::vector<int> free_dims;
  i64 lam_fixed = 0, cov_fixed = 0;
  for (int d = 0; d < spec.t; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    const i64 cover = c.w - c.cost[ud];
    auto it = dims.find(d);
    if (it != dims.end()) {
      lam_fixed = checked_add(lam_fixed, checked_mul(it->second, c.cost[ud]));
      cov_fixed = checked_add(cov_fixed, checked_mul(it->second, cover));
    } else if (c.usable[ud]) {
      free_dims.push_back(d);
    }
  }
  if (lam_fixed > spec.lambda)
    throw Error(Errc::SpecInconsistent, where + ": the lambda identity is exceeded");

  bool any = false;
  bool parity_failed = false;
  std::uint64_t work = 0;
  const auto t_count = dims.find(spec.t);
  const auto rec = [&](auto&& self, std::size_t i, i64 lam, i64 cov) -> bool {
    if (++work > 20'000'000) return true;
    if (i == free_dims.size()) {
      if (lam != spec.lambda) return false;
      const i64 rest = total - cov;
      if (rest < 0 || rest % c.w != 0) return false;
      const i64 z = rest / c.w;
      if (t_count != dims.end() && t_count->second != z) return false;
      if (spec.q == 2 && spec.mu % 2 == 1) {
        // Only t-subspaces cover with odd weight, so they must reach every nonzero vector.
        if (z % 2 == 0 || checked_mul(z, c.w) < ipow(2, spec.m) - 1) {
          parity_failed = true;
          return false;
        }
      }
      return true;
    }
    const int d = free_dims[i];
    const auto ud = static_cast<std::size_t>(d);
    const i64 cover = c.w - c.cost[ud];
    for (i64 x = 0; lam + x * c.cost[ud] <= spec.lambda && cov + x * cover <= total; ++x)
      if (self(self, i + 1, lam + x * c.cost[ud], cov + x * cover)) return true;
    return false;
  };
  any = rec(rec, 0, lam_fixed, cov_fixed);
  if (!any)
    throw Error(Errc::SpecInconsistent,
                where + (parity_failed ? ": every count solution fails the mod-2 coverage argument"
                                       : ": the lambda and mu counting identities have no solution"));
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct Cand {
  Subspace u;
  int dim = 0;
  i64 cost = 0;   // lambda per use
  i64 count = 0;  // members per use
  std::vector<std::pair<std::uint32_t, i64>> cover;
};

struct Model {
  Counting counting;
  std::vector<Cand> cands;
  std::vector<std::vector<std::pair<std::uint32_t, i64>>> inc;  // column -> (cand, amount)
  std::vector<i64> col_size;
  i64 mu = 0;
  i64 lambda = 0;
  std::vector<i64> dims_target;  // -1 when free, per dim 0..t
  bool zero_allowed = false;
  // minimum / maximum member counts for lambda sums, per mask of free lower dims
  mutable std::mutex dp_mu;
  mutable std::map<unsigned, std::pair<std::vector<i64>, std::vector<i64>>> dp;
  static constexpr i64 kInf = std::numeric_limits<i64>::max() / 4;

  const std::pair<std::vector<i64>, std::vector<i64>>& tables(unsigned mask) const {
    std::lock_guard<std::mutex> lock(dp_mu);
    auto it = dp.find(mask);
    if (it != dp.end()) return it->second;
    std::vector<i64> lo(static_cast<std::size_t>(lambda) + 1, kInf), hi(static_cast<std::size_t>(lambda) + 1, -kInf);
    lo[0] = hi[0] = 0;
    for (i64 l = 1; l <= lambda; ++l)
      for (int d = 0; d < counting.t; ++d) {
        if (!(mask >> d & 1u)) continue;
        const i64 c = counting.cost[static_cast<std::size_t>(d)];
        if (c > l) continue;
        const auto from = static_cast<std::size_t>(l - c);
        if (lo[from] < kInf) lo[static_cast<std::size_t>(l)] = std::min(lo[static_cast<std::size_t>(l)], lo[from] + 1);
        if (hi[from] > -kInf) hi[static_cast<std::size_t>(l)] = std::max(hi[static_cast<std::size_t>(l)], hi[from] + 1);
      }
    return dp.emplace(mask, std::make_pair(std::move(lo), std::move(hi))).first->second;
  }
};

constexpr i64 kDpLimit = i64{1} << 22;

struct Branch {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  std::uint64_t nodes = 0;
  std::uint64_t trace = 0;
  std::vector<std::uint32_t> chosen;
  i64 zeros = 0;
};

class State {
 public:
  explicit State(const Model& model) : m_(model) {
    const auto nc = m_.cands.size();
    r_.assign(m_.inc.size(), m_.mu);
    blocked_.assign(nc, 0);
    forbidden_.assign(nc, 0);
    alive_.assign(m_.inc.size(), 0);
    lambda_ = m_.lambda;
    rem_ = 0;
    for (std::size_t col = 0; col < m_.inc.size(); ++col) rem_ += m_.mu * m_.col_size[col];
    dims_ = m_.dims_target;
    for (std::size_t c = 0; c < nc; ++c) {
      for (auto [col, amt] : m_.cands[c].cover)
        if (r_[col] < amt) ++blocked_[c];
      if (blocked_[c] == 0)
        for (auto [col, amt] : m_.cands[c].cover) ++alive_[col];
    }
  }

  void add(std::uint32_t c) {
    const Cand& cand = m_.cands[c];
    for (auto [col, amt] : cand.cover) {
      const i64 old = r_[col];
      r_[col] = old - amt;
      rem_ -= amt * m_.col_size[col];
      for (auto [v, a] : m_.inc[col])
        if (old >= a && r_[col] < a) block(v);
    }
    lambda_ -= cand.cost;
    auto& d = dims_[static_cast<std::size_t>(cand.dim)];
    if (d >= 0) d -= cand.count;
    chosen_.push_back(c);
  }

  void remove(std::uint32_t c) {
    const Cand& cand = m_.cands[c];
    for (auto [col, amt] : cand.cover) {
      const i64 old = r_[col];
      r_[col] = old + amt;
      rem_ += amt * m_.col_size[col];
      for (auto [v, a] : m_.inc[col])
        if (old < a && r_[col] >= a) unblock(v);
    }
    lambda_ += cand.cost;
    auto& d = dims_[static_cast<std::size_t>(cand.dim)];
    if (d >= 0) d += cand.count;
    chosen_.pop_back();
  }

  void forbid(std::uint32_t v) {
    forbidden_[v] = 1;
    if (blocked_[v] == 0)
      for (auto [col, a] : m_.cands[v].cover) --alive_[col];
  }

  void unforbid(std::uint32_t v) {
    forbidden_[v] = 0;
    if (blocked_[v] == 0)
      for (auto [col, a] : m_.cands[v].cover) ++alive_[col];
  }

  // Counting bound on what is left: lambda_ and the uncovered weight rem_.
  bool reachable() const {
    const Counting& c = m_.counting;
    const i64 total = rem_ + lambda_;
    if (total % c.w != 0) return false;
    const i64 members = total / c.w;
    i64 lam = lambda_, cnt = members;
    unsigned mask = 0;
    bool t_free = dims_[static_cast<std::size_t>(c.t)] < 0;
    for (int d = 0; d <= c.t; ++d) {
      const auto ud = static_cast<std::size_t>(d);
      if (dims_[ud] >= 0) {
        lam -= dims_[ud] * c.cost[ud];
        cnt -= dims_[ud];
      } else if (d < c.t && c.usable[ud] && (d > 0 || m_.zero_allowed)) {
        mask |= 1u << d;
      }
    }
    if (lam < 0 || cnt < 0) return false;
    if (mask == 0) return lam == 0 && (t_free || cnt == 0);
    if (m_.lambda > kDpLimit) return true;
    const auto& [lo, hi] = m_.tables(mask);
    const auto ul = static_cast<std::size_t>(lam);
    if (lo[ul] > cnt) return false;
    if (!t_free && hi[ul] < cnt) return false;
    return true;
  }

  // Column to branch on, or -1 when everything is covered; -2 when stuck.
  long pick() const {
    long best = -1;
    i64 best_alive = 0;
    for (std::size_t col = 0; col < r_.size(); ++col) {
      if (r_[col] == 0) continue;
      if (alive_[col] == 0) return -2;
      if (best < 0 || alive_[col] < best_alive) {
        best = static_cast<long>(col);
        best_alive = alive_[col];
      }
    }
    return best;
  }

  std::vector<std::uint32_t> options(std::size_t col) const {
    std::vector<std::uint32_t> out;
    for (auto [v, a] : m_.inc[col]) {
      if (blocked_[v] || forbidden_[v]) continue;
      const Cand& cand = m_.cands[v];
      if (cand.cost > lambda_) continue;
      const i64 d = dims_[static_cast<std::size_t>(cand.dim)];
      if (d >= 0 && d < cand.count) continue;
      out.push_back(v);
    }
    return out;
  }

  // Completion by 0-subspaces once every vector is covered.
  std::optional<i64> finish() const {
    const Counting& c = m_.counting;
    for (int d = 1; d <= c.t; ++d)
      if (dims_[static_cast<std::size_t>(d)] > 0) return std::nullopt;
    if (lambda_ == 0) return dims_[0] > 0 ? std::nullopt : std::optional<i64>(0);
    if (!m_.zero_allowed || lambda_ % c.w != 0) return std::nullopt;
    const i64 z = lambda_ / c.w;
    if (dims_[0] >= 0 && dims_[0] != z) return std::nullopt;
    return z;
  }

  const std::vector<std::uint32_t>& chosen() const { return chosen_; }

 private:
  void block(std::uint32_t v) {
    if (blocked_[v]++ == 0 && !forbidden_[v])
      for (auto [col, a] : m_.cands[v].cover) --alive_[col];
  }
  void unblock(std::uint32_t v) {
    if (--blocked_[v] == 0 && !forbidden_[v])
      for (auto [col, a] : m_.cands[v].cover) ++alive_[col];
  }

  const Model& m_;
  std::vector<i64> r_;
  std::vector<int> blocked_;
  std::vector<char> forbidden_;
  std::vector<i64> alive_;
  std::vector<i64> dims_;
  std::vector<std::uint32_t> chosen_;
  i64 lambda_ = 0;
  i64 rem_ = 0;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

class Dfs {
 public:
  Dfs(State& s, std::uint64_t budget, const std::atomic<bool>* cancel)
      : s_(s), budget_(budget), cancel_(cancel) {}

  // true when a solution is on the state's stack (zeros_ set), false otherwise.
  bool run(int depth) {
    if (++nodes_ > budget_ || (cancel_ && (nodes_ & 1023) == 0 && cancel_->load())) {
      over_ = true;
      return false;
    }
    if (!s_.reachable()) return false;
    const long col = s_.pick();
    if (col == -2) return false;
    if (col == -1) {
      if (auto z = s_.finish()) {
        zeros_ = *z;
        return true;
      }
      return false;
    }
    const auto opts = s_.options(static_cast<std::size_t>(col));
    std::size_t i = 0;
    bool found = false;
    for (; i < opts.size(); ++i) {
      trace_ = mix(trace_, (static_cast<std::uint64_t>(depth) << 32) ^ opts[i]);
      s_.add(opts[i]);
      found = run(depth + 1);
      if (found) break;
      s_.remove(opts[i]);
      if (over_) break;
      s_.forbid(opts[i]);
    }
    const std::size_t forbidden = found || over_ ? i : opts.size();
    for (std::size_t j = 0; j < forbidden; ++j) s_.unforbid(opts[j]);
    return found;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t trace() const { return trace_; }
  bool over() const { return over_; }
  i64 zeros() const { return zeros_; }

 private:
  State& s_;
  std::uint64_t budget_;
  const std::atomic<bool>* cancel_;
  std::uint64_t nodes_ = 0;
  std::uint64_t trace_ = 0;
  bool over_ = false;
  i64 zeros_ = 0;
};

void build_model(const SearchSpec& spec, Model& model, std::optional<OrbitSystem>& orbits) {
  model.counting = counting_for(spec);
  model.mu = spec.mu;
  model.lambda = spec.lambda;
  const auto& c = model.counting;
  model.dims_target.assign(static_cast<std::size_t>(spec.t) + 1, -1);
  if (spec.dims)
    for (auto [d, k] : *spec.dims) model.dims_target[static_cast<std::size_t>(d)] = k;
  model.zero_allowed = c.usable[0] && model.dims_target[0] != 0;

  std::vector<int> dims;
  for (int d = 1; d <= spec.t; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    if (!c.usable[ud] || model.dims_target[ud] == 0 || d > spec.m) continue;
    dims.push_back(d);
  }

  const Space sp = Space::over(spec.q, spec.m);
  constexpr std::uint64_t kIncidenceLimit = std::uint64_t{1} << 26;
  std::uint64_t incidence = 0;
  if (spec.group_order) {
    orbits = singer_orbits(spec.q, spec.m, *spec.group_order, dims);
    const auto& sys = *orbits;
    model.col_size.assign(sys.vector_orbits().size(), static_cast<i64>(sys.order()));
    for (const auto& o : sys.orbits()) {
      Cand cand;
      cand.u = o.representative;
      cand.dim = o.representative.dim();
      const i64 weight = ipow(spec.q, spec.t - cand.dim);
      cand.count = static_cast<i64>(o.size);
      cand.cost = checked_mul(cand.count, c.cost[static_cast<std::size_t>(cand.dim)]);
      if (cand.cost > spec.lambda) continue;
      bool ok = true;
      for (auto [x, k] : sys.profile(o)) {
        const i64 amt = k * weight;
        if (amt > spec.mu) ok = false;
        cand.cover.emplace_back(static_cast<std::uint32_t>(x), amt);
      }
      if (!ok) continue;
      incidence += cand.cover.size();
      if (incidence > kIncidenceLimit) throw Error(Errc::AmbientTooLarge, "candidate pool exceeds 2^26 incidences");
      model.cands.push_back(std::move(cand));
    }
  } else {
    if (sp.size() > (std::uint64_t{1} << 20)) throw Error(Errc::AmbientTooLarge, "q^m exceeds 2^20");
    model.col_size.assign(sp.size() - 1, 1);
    for (int d : dims) {
      std::uint64_t per = 1;
      for (int i = 0; i < d; ++i) per *= spec.q;
      if (incidence + sp.gaussian_binomial(d) * (per - 1) > kIncidenceLimit)
        throw Error(Errc::AmbientTooLarge, "candidate pool exceeds 2^26 incidences");
      incidence += sp.gaussian_binomial(d) * (per - 1);
      const i64 weight = ipow(spec.q, spec.t - d);
      for (const auto& u : sp.enumerate_subspaces(d)) {
        Cand cand;
        cand.u = u;
        cand.dim = d;
        cand.count = 1;
        cand.cost = c.cost[static_cast<std::size_t>(d)];
        sp.for_each_vector(u, [&](Vec v) {
          if (v != 0) cand.cover.emplace_back(static_cast<std::uint32_t>(v - 1), weight);
        });
        model.cands.push_back(std::move(cand));
      }
    }
  }

  model.inc.assign(model.col_size.size(), {});
  for (std::size_t i = 0; i < model.cands.size(); ++i)
    for (auto [col, amt] : model.cands[i].cover) model.inc[col].emplace_back(static_cast<std::uint32_t>(i), amt);
  if (spec.seed != 0) {
    std::mt19937_64 rng(spec.seed);
    for (auto& list : model.inc) std::shuffle(list.begin(), list.end(), rng);
  }
}

}  // namespace

SearchResult exact_cover_search(const SearchSpec& spec) {
  if (spec.m < 1 || spec.t < 1 || spec.mu < 0 || spec.lambda < 0)
    throw Error(Errc::InvalidArgument, "search needs m, t >= 1 and lambda, mu >= 0");
  if (prime_power(spec.q).p == 0) throw Error(Errc::UnsupportedQ, std::to_string(spec.q) + " is not a prime power");
  check_dims(spec);

  std::optional<OrbitSystem> orbits;
  Model model;
  build_model(spec, model, orbits);
  State root(model);
  SearchResult result;

  const auto materialize = [&](const std::vector<std::uint32_t>& chosen, i64 zeros) {
    const Space sp = Space::over(spec.q, spec.m);
    MemberMap members;
    for (auto c : chosen) {
      const auto& u = model.cands[c].u;
      if (orbits) {
        for (const auto& w : orbits->expand(u)) members[w] += 1;
      } else {
        members[u] += 1;
      }
    }
    if (zeros > 0) members[sp.zero()] += zeros;
    Multispread ms = Multispread::verified(sp, std::move(members), spec.t);
    if (ms.lambda() != spec.lambda || ms.mu() != spec.mu)
      throw Error(Errc::InternalVerifyFailed, "search produced " + ms.params().to_string());
    return ms;
  };

  // Root node, then one job per first-level branch.
  result.nodes = 1;
  if (!root.reachable()) {
    result.outcome = SearchOutcome::Exhausted;
    result.note = "counting bound rules out every member count";
    return result;
  }
  const long col = root.pick();
  if (col == -2) {
    result.outcome = SearchOutcome::Exhausted;
    result.note = "some vector has no candidate";
    return result;
  }
  if (col == -1) {
    if (auto z = root.finish()) {
      result.outcome = SearchOutcome::Found;
      result.multispread = materialize({}, *z);
    } else {
      result.outcome = SearchOutcome::Exhausted;
    }
    return result;
  }
  const auto opts = root.options(static_cast<std::size_t>(col));
  std::vector<Branch> branches(opts.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> found_at{opts.size()};
  std::vector<std::atomic<bool>> cancel(opts.size());
  for (auto& c : cancel) c = false;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= opts.size() || i > found_at.load()) return;
      State s(model);
      for (std::size_t j = 0; j < i; ++j) s.forbid(opts[j]);
      s.add(opts[i]);
      Dfs dfs(s, spec.budget, &cancel[i]);
      const bool ok = dfs.run(1);
      Branch& b = branches[i];
      b.nodes = dfs.nodes();
      b.trace = mix(mix(0, opts[i]), dfs.trace());
      if (ok) {
        b.outcome = SearchOutcome::Found;
        b.chosen = s.chosen();
        b.zeros = dfs.zeros();
        std::size_t cur = found_at.load();
        while (i < cur && !found_at.compare_exchange_weak(cur, i)) {
        }
        for (std::size_t j = i + 1; j < opts.size(); ++j) cancel[j] = true;
      } else {
        b.outcome = dfs.over() ? SearchOutcome::Budget : SearchOutcome::Exhausted;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(opts.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::size_t hit = found_at.load();
  const std::size_t last = hit < opts.size() ? hit + 1 : opts.size();
  bool budget = false;
  result.trace = 0;
  for (std::size_t i = 0; i < last; ++i) {
    result.nodes += branches[i].nodes;
    result.trace = mix(result.trace, branches[i].trace);
    if (branches[i].outcome == SearchOutcome::Budget) budget = true;
  }
  if (hit < opts.size()) {
    result.outcome = SearchOutcome::Found;
    result.multispread = materialize(branches[hit].chosen, branches[hit].zeros);
    if (budget) result.note = "an earlier branch ran out of budget";
  } else {
    result.outcome = budget ? SearchOutcome::Budget : SearchOutcome::Exhausted;
  }
  return result;
}

}  // namespace mspread
