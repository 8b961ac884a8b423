#include <algorithm>

#include "doctest.h"
#include "multispread/catalog.hpp"
#include "multispread/constructions.hpp"
#include "multispread/errors.hpp"
#include "multispread/int_math.hpp"

using namespace mspread;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return Errc::InvalidArgument;
}

Multispread example1() {
  const Space sp = Space::over(2, 3);
  return Multispread::verified(sp,
                               to_member_map({sp.span({7}), sp.span({2, 1}), sp.span({4, 1}),
                                              sp.span({4, 2}), sp.span({6, 3})}),
                               2);
}

bool has_params(const Multispread& ms, std::int64_t lambda, std::int64_t mu, int t, int m) {
  return ms.lambda() == lambda && ms.mu() == mu && ms.t() == t && ms.space().m() == m;
}

}  // namespace

TEST_CASE("fold spreads") {
  const Field f2 = Field::of_order(2);
  auto a = fold_spread(f2, 2, 4, 1);
  CHECK(has_params(a, 0, 1, 2, 4));
  CHECK(a.n() == 5);
  auto b = fold_spread(f2, 2, 3, 3);
  CHECK(has_params(b, 0, 3, 2, 3));
  CHECK(b.n() == 7);
  CHECK(code_of([&] { fold_spread(f2, 2, 3, 1); }) == Errc::DivisibilityViolated);
  for (std::int64_t q : {3, 4})
    CHECK(has_params(fold_spread(Field::of_order(static_cast<std::uint64_t>(q)), 2, 4, 1), 0, 1, 2, 4));
  CHECK(has_params(fold_spread(f2, 3, 6, 2), 0, 2, 3, 6));
  CHECK(has_params(fold_spread(f2, 4, 6, 5), 0, 5, 4, 6));
}

TEST_CASE("unions") {
  auto p = lift(fold_spread(Field::of_order(2), 3, 6, 1), LiftKind::Project);
  CHECK(has_params(p, 1, 2, 3, 5));
  CHECK(has_params(unite(p, p), 2, 4, 3, 5));
  const auto& x1 = *catalog_entry("X1").multispread;
  CHECK(has_params(unite(p, x1), 6, 5, 3, 5));
  CHECK(has_params(lift(p, LiftKind::AddZero), 8, 2, 3, 5));
  CHECK(code_of([&] { unite(p, example1()); }) == Errc::ParamMismatch);
}

TEST_CASE("lifts") {
  const Field f2 = Field::of_order(2);
  CHECK(has_params(lift(fold_spread(f2, 2, 4, 1), LiftKind::RaisePdim), 5, 2, 3, 4));
  CHECK(has_params(lift(example1(), LiftKind::Embed), 1, 2, 2, 5));
  CHECK(has_params(lift(lift(example1(), LiftKind::Embed), LiftKind::Embed), 1, 2, 2, 7));
  CHECK(has_params(lift(example1(), LiftKind::AddFold), 1, 5, 2, 3));

  auto spread4 = fold_spread(Field::of_order(4), 2, 4, 1);
  auto sub = lift(spread4, LiftKind::Subfield);
  CHECK(sub.space().q() == 2);
  CHECK(has_params(sub, 0, 1, 4, 8));
  CHECK(code_of([&] { lift(example1(), LiftKind::Subfield); }) == Errc::KindPreconditionFailed);

  const Space sp1 = Space::over(2, 1);
  auto tiny = Multispread::verified(sp1, to_member_map({sp1.full()}), 1);
  CHECK(code_of([&] { lift(tiny, LiftKind::Project); }) == Errc::KindPreconditionFailed);

  auto q3 = lift(fold_spread(Field::of_order(3), 2, 4, 1), LiftKind::Project);
  CHECK(has_params(q3, 2, 3, 2, 3));
}

TEST_CASE("switching") {
  const Field f2 = Field::of_order(2);
  auto raised = lift(fold_spread(f2, 2, 4, 1), LiftKind::RaisePdim);
  const Subspace target = raised.members().begin()->first;
  REQUIRE(target.dim() == 2);
  auto up = switch_up(raised, target);
  CHECK(has_params(up, 4, 3, 3, 4));
  auto back = switch_down(up, target);
  CHECK(back.params() == raised.params());
  CHECK(back.members() == raised.members());

  const Space sp4 = Space::over(2, 4);
  CHECK(code_of([&] { switch_up(raised, sp4.span({1, 2})); }) == Errc::NoSuchMember);
  const auto spread33 = fold_spread(f2, 3, 3, 1);
  CHECK(code_of([&] { switch_up(spread33, spread33.members().begin()->first); }) == Errc::AmbientNotTPlusS);
  CHECK(code_of([&] { switch_up(example1(), example1().members().begin()->first); }) == Errc::NoSuchMember);

  const Space sp5 = Space::over(2, 5);
  auto all4 = Multispread::verified(sp5, to_member_map(sp5.enumerate_subspaces(4)), 4);
  CHECK(has_params(all4, 0, 15, 4, 5));
  bool switched = false;
  for (const auto& c : sp5.enumerate_subspaces(3)) {
    try {
      CHECK(has_params(switch_down(all4, c), 1, 14, 4, 5));
      switched = true;
      break;
    } catch (const Error&) {
    }
  }
  CHECK(switched);

  auto zero = Multispread::verified(sp4, to_member_map({sp4.zero()}), 2);
  CHECK(code_of([&] { switch_down(zero, sp4.zero()); }) == Errc::ConfigurationNotFound);
}

TEST_CASE("t = 2 ladder through the oval") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field f = Field::of_order(q);
    const auto o = oval(f);
    REQUIRE(o.points.size() == q + 1);
    const Space sp(f, 3);
    for (std::size_t a = 0; a < o.points.size(); ++a)
      for (std::size_t b = a + 1; b < o.points.size(); ++b)
        for (std::size_t c = b + 1; c < o.points.size(); ++c)
          CHECK(sp.sum(sp.sum(o.points[a], o.points[b]), o.points[c]).dim() == 3);
    MemberMap doubled;
    for (const auto& u : sp.enumerate_subspaces(2)) doubled[u] = 2;
    auto ms = Multispread::verified(sp, doubled, 2);
    const auto qi = static_cast<std::int64_t>(q);
    for (std::int64_t l = 1; l <= qi; ++l) {
      ms = switch_down(ms, o.points[static_cast<std::size_t>(l - 1)]);
      CHECK(has_params(ms, (qi - 1) * l, 2 * qi + 2 - l, 2, 3));
    }
  }
  const Space sp2 = Space::over(2, 3);
  const auto o2 = oval(Field::of_order(2));
  CHECK(o2.points == std::vector<Subspace>{sp2.span({4}), sp2.span({7}), sp2.span({1})});
}

TEST_CASE("Desarguesian construction in dimension 6") {
  const Field f2 = Field::of_order(2);
  auto a = desarguesian_46(f2, 1);
  CHECK(has_params(a, 6, 3, 4, 6));
  CHECK(a.n() == 13);
  CHECK(a.count_dim(3) == 6);
  CHECK(a.count_dim(4) == 7);
  CHECK(has_params(desarguesian_46(f2, 3), 0, 5, 4, 6));
  CHECK(has_params(desarguesian_46(Field::of_order(3), 1), 48, 4, 4, 6));
  CHECK(code_of([&] { desarguesian_46(f2, 4); }) == Errc::SOutOfRange);
  CHECK(code_of([&] { desarguesian_46(f2, -1); }) == Errc::SOutOfRange);

  auto p = dual_partition_cor(f2, 1);
  CHECK(p.nu() == 1);
  CHECK(p.count_dim(2) == 7);
  CHECK(p.count_dim(3) == 6);
  auto p3 = dual_partition_cor(f2, 3);
  CHECK(p3.count_dim(2) == 21);
  CHECK(p3.count_dim(3) == 0);
  auto pq3 = dual_partition_cor(Field::of_order(3), 1);
  CHECK(pq3.count_dim(2) == 13);
  CHECK(pq3.count_dim(3) == 24);
}

TEST_CASE("Desarguesian 4-subspaces meet their block in planes and the rest in lines") {
  for (int s = 1; s <= 2; ++s) {
    const auto ms = desarguesian_46(Field::of_order(2), s);
    const Space& sp = ms.space();
    for (const auto& [u, k] : ms.members()) {
      if (u.dim() != 4) continue;
      for (const auto& [d, j] : ms.members())
        if (d.dim() == 3) CHECK(sp.intersect(u, d).dim() == 1);
    }
  }
}

TEST_CASE("recipes") {
  auto a = recipe(2, 3, 2, 1, 2);
  CHECK(has_params(a.multispread, 1, 2, 2, 3));
  CHECK_FALSE(a.plan.empty());
  auto b = recipe(2, 5, 3, 5, 3);
  CHECK(has_params(b.multispread, 5, 3, 3, 5));
  auto c = recipe(2, 5, 4, 7, 8);
  CHECK(has_params(c.multispread, 7, 8, 4, 5));
  CHECK(code_of([] { recipe(4, 5, 3, 51, 5); }) == Errc::NotCovered);
  CHECK(code_of([] { recipe(2, 5, 4, 13, 2); }) == Errc::NotCovered);
  CHECK(has_params(recipe(2, 9, 4, 13, 2).multispread, 13, 2, 4, 9));
  CHECK(has_params(recipe(2, 4, 4, 0, 2).multispread, 0, 2, 4, 4));
  CHECK(has_params(recipe(2, 2, 3, 1, 2).multispread, 1, 2, 3, 2));
  CHECK(has_params(recipe(4, 4, 2, 0, 1).multispread, 0, 1, 2, 4));
}

TEST_CASE("recipes follow the oracle on small cells") {
  for (std::int64_t q : {2, 3})
    for (int t = 2; t <= 4; ++t)
      for (int m = 2; m <= 6; ++m) {
        if (ipow(q, m) > 1024) continue;
        for (std::int64_t mu = 0; mu <= 6; ++mu) {
          const auto v = oracle(q, m, t, mu);
          if (v.status != Status::Feasible || !v.lambda_min) continue;
          CAPTURE(q);
          CAPTURE(m);
          CAPTURE(t);
          CAPTURE(mu);
          const auto c = recipe(q, m, t, *v.lambda_min, mu);
          CHECK(has_params(c.multispread, *v.lambda_min, mu, t, m));
        }
      }
}
