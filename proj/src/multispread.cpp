#include "multispread/multispread.hpp"

#include <sstream>

#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

namespace mspread {

MemberMap to_member_map(const std::vector<Subspace>& members) {
  MemberMap out;
  for (const auto& s : members) ++out[s];
  return out;
}

void merge_members(MemberMap& a, const MemberMap& b, std::int64_t times) {
  if (times <= 0) return;
  for (const auto& [s, k] : b) a[s] = checked_add(a[s], checked_mul(k, times));
}

std::string MultispreadParams::to_string() const {
  std::ostringstream os;
  os << "(" << lambda << "," << mu << ";" << t << "," << m << ")_" << q;
  return os.str();
}

namespace {

void check_members(const Space& space, const MemberMap& members, int max_dim) {
  for (const auto& [s, k] : members) {
    space.check(s);
    if (k < 1) throw Error(Errc::InvalidArgument, "member multiplicity must be >= 1");
    if (max_dim >= 0 && s.dim() > max_dim)
      throw Error(Errc::DimensionExceedsT, "member " + space.to_string(s) + " has dimension " +
                                               std::to_string(s.dim()) + " > t=" + std::to_string(max_dim));
  }
}

// weight(U) * mult(U) summed over members containing each vector
std::vector<std::int64_t> accumulate(const Space& space, const MemberMap& members, int t) {
  if (space.size() > Space::kEnumerationLimit)
    throw Error(Errc::AmbientTooLarge, "q^m exceeds 2^24; coverage cannot be enumerated");
  std::vector<std::int64_t> cover(space.size(), 0);
  for (const auto& [s, k] : members) {
    if (s.is_zero()) continue;
    const std::int64_t w = t < 0 ? k : checked_mul(k, ipow(space.q(), t - s.dim()));
    space.for_each_vector(s, [&](Vec v) { cover[v] += w; });
  }
  return cover;
}

}  // namespace

MultispreadParams verify(const Space& space, const MemberMap& members, int t) {
  if (t < 1) throw Error(Errc::InvalidArgument, "pseudodimension t must be >= 1");
  check_members(space, members, t);
  const auto cover = accumulate(space, members, t);
  const std::int64_t mu = cover.size() > 1 ? cover[1] : 0;
  for (std::uint64_t v = 2; v < cover.size(); ++v) {
    if (cover[v] != mu)
      throw CoverageError(Errc::NonUniformCoverage, v, cover[v], mu,
                          "vector " + space.digit_string(v) + " covered " + std::to_string(cover[v]) +
                              " times, expected " + std::to_string(mu));
  }
  MultispreadParams p;
  p.q = space.q();
  p.m = space.m();
  p.t = t;
  p.mu = mu;
  const std::int64_t qt = ipow(space.q(), t);
  for (const auto& [s, k] : members) {
    p.n = checked_add(p.n, k);
    p.lambda = checked_add(p.lambda, checked_mul(k, ipow(space.q(), t - s.dim()) - 1));
  }
  // cardinality identity, always true for uniform coverage
  if (checked_add(p.lambda, checked_mul(p.mu, static_cast<std::int64_t>(space.size()) - 1)) !=
      checked_mul(p.n, qt - 1))
    throw Error(Errc::InternalVerifyFailed, "cardinality identity violated");
  return p;
}

Multispread Multispread::verified(const Space& space, MemberMap members, int t) {
  auto params = verify(space, members, t);
  return Multispread(space, std::move(members), params);
}

std::int64_t Multispread::count_dim(int d) const {
  std::int64_t c = 0;
  for (const auto& [s, k] : members_)
    if (s.dim() == d) c += k;
  return c;
}

std::string Multispread::summary() const {
  return "multispread " + params_.to_string() + ", n=" + std::to_string(params_.n);
}

std::int64_t verify_partition(const Space& space, const MemberMap& members) {
  check_members(space, members, -1);
  const auto cover = accumulate(space, members, -1);
  const std::int64_t nu = cover.size() > 1 ? cover[1] : 0;
  for (std::uint64_t v = 2; v < cover.size(); ++v) {
    if (cover[v] != nu)
      throw CoverageError(Errc::NonUniformFold, v, cover[v], nu,
                          "vector " + space.digit_string(v) + " lies in " + std::to_string(cover[v]) +
                              " members, expected " + std::to_string(nu));
  }
  return nu;
}

MultifoldPartition MultifoldPartition::verified(const Space& space, MemberMap members) {
  const auto nu = verify_partition(space, members);
  return MultifoldPartition(space, std::move(members), nu);
}

std::int64_t MultifoldPartition::size() const {
  std::int64_t n = 0;
  for (const auto& [s, k] : members_) n += k;
  return n;
}

std::int64_t MultifoldPartition::count_dim(int d) const {
  std::int64_t c = 0;
  for (const auto& [s, k] : members_)
    if (s.dim() == d) c += k;
  return c;
}

std::string MultifoldPartition::summary() const {
  return "partition nu=" + std::to_string(nu_) + " of F_" + std::to_string(space_.q()) + "^" +
         std::to_string(space_.m()) + ", n=" + std::to_string(size());
}

MemberMap complement_members(const Space& space, const MemberMap& members) {
  MemberMap out;
  for (const auto& [s, k] : members) out[space.complement(s)] += k;
  return out;
}

MultifoldPartition dualize(const Multispread& ms) {
  const auto& p = ms.params();
  const std::int64_t q = p.q;
  // nu = n - q^(m-t) mu, and (q^t - 1) nu = (q^(m-t) - 1) mu + lambda
  std::int64_t nu;
  bool dual_l;
  if (p.m >= p.t) {
    const std::int64_t f = ipow(q, p.m - p.t);
    nu = p.n - checked_mul(f, p.mu);
    dual_l = checked_mul(ipow(q, p.t) - 1, nu) == checked_add(checked_mul(f - 1, p.mu), p.lambda);
  } else {
    const std::int64_t f = ipow(q, p.t - p.m);
    if (p.mu % f != 0) throw Error(Errc::NonIntegerNu, "q^(t-m) does not divide mu");
    nu = p.n - p.mu / f;
    dual_l = checked_mul(checked_mul(ipow(q, p.t) - 1, nu), f) ==
             checked_add(checked_mul(1 - f, p.mu), checked_mul(p.lambda, f));
  }
  if (!dual_l) throw Error(Errc::NonIntegerNu, "dual parameter identity fails");
  auto part = MultifoldPartition::verified(ms.space(), complement_members(ms.space(), ms.members()));
  if (part.nu() != nu)
    throw Error(Errc::InternalVerifyFailed, "dual fold " + std::to_string(part.nu()) + " differs from predicted " +
                                                std::to_string(nu));
  return part;
}

Multispread dualize(const MultifoldPartition& part, int t) {
  return Multispread::verified(part.space(), complement_members(part.space(), part.members()), t);
}

}  // namespace mspread
