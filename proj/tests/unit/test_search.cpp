#include "doctest.h"
#include "multispread/catalog.hpp"
#include "multispread/errors.hpp"
#include "multispread/feasibility.hpp"
#include "multispread/search.hpp"

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

SearchSpec spec(std::uint32_t q, int m, int t, std::int64_t lambda, std::int64_t mu) {
  SearchSpec s;
  s.q = q;
  s.m = m;
  s.t = t;
  s.lambda = lambda;
  s.mu = mu;
  return s;
}

}  // namespace

TEST_CASE("trivial covers") {
  auto r = exact_cover_search(spec(2, 2, 1, 0, 1));
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->n() == 3);
  CHECK(r.multispread->count_dim(1) == 3);

  r = exact_cover_search(spec(2, 3, 2, 1, 2));
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->lambda() == 1);

  r = exact_cover_search(spec(2, 3, 2, 3, 0));
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->count_dim(0) == 1);

  CHECK(exact_cover_search(spec(2, 3, 2, 0, 1)).outcome == SearchOutcome::Exhausted);
  CHECK(exact_cover_search(spec(2, 3, 2, 2, 2)).outcome == SearchOutcome::Exhausted);
}

TEST_CASE("no (lambda,2;4,5)_2 or (lambda,3;4,5)_2") {
  for (std::int64_t mu : {2, 3}) {
    const auto l = lambda_min_congruence(2, 5, 4, mu);
    for (std::int64_t lambda = l; lambda <= l + 15; lambda += 15) {
      CAPTURE(mu);
      CAPTURE(lambda);
      CHECK(exact_cover_search(spec(2, 5, 4, lambda, mu)).outcome == SearchOutcome::Exhausted);
    }
  }
}

TEST_CASE("dimension counts that contradict the counting identities") {
  auto s = spec(2, 5, 4, 11, 4);
  s.dims = std::map<int, std::int64_t>{{2, 0}, {3, 11}, {4, 0}};
  CHECK(code_of([&] { exact_cover_search(s); }) == Errc::SpecInconsistent);
  s = spec(2, 5, 4, 10, 5);
  s.dims = std::map<int, std::int64_t>{{2, 0}};
  CHECK(code_of([&] { exact_cover_search(s); }) == Errc::SpecInconsistent);
  s = spec(2, 5, 4, 11, 4);
  s.dims = std::map<int, std::int64_t>{{2, 0}};
  CHECK(code_of([&] { check_dims(s); }) == Errc::SpecInconsistent);
  s.dims = std::map<int, std::int64_t>{{2, 1}};
  CHECK_NOTHROW(check_dims(s));
  s.dims = std::map<int, std::int64_t>{{1, 1}};
  CHECK(code_of([&] { check_dims(s); }) == Errc::SpecInconsistent);
}

TEST_CASE("with a 2-subspace allowed, (11,4;4,5)_2 and (10,5;4,5)_2 are found") {
  for (auto [l, mu] : {std::pair{11, 4}, std::pair{10, 5}}) {
    auto r = exact_cover_search(spec(2, 5, 4, l, mu));
    REQUIRE(r.outcome == SearchOutcome::Found);
    CHECK(r.multispread->count_dim(2) >= 1);
  }
}

TEST_CASE("(5,3;3,5)_2 with 5 planes and 9 solids") {
  auto s = spec(2, 5, 3, 5, 3);
  s.dims = std::map<int, std::int64_t>{{2, 5}, {3, 9}};
  const auto r = exact_cover_search(s);
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.nodes <= 10'000'000);
  CHECK(r.multispread->count_dim(2) == 5);
  CHECK(r.multispread->count_dim(3) == 9);
  CHECK(r.multispread->params() == MultispreadParams{2, 5, 3, 5, 3, 14});
}

TEST_CASE("budget and determinism") {
  auto s = spec(2, 5, 3, 5, 3);
  s.dims = std::map<int, std::int64_t>{{2, 5}, {3, 9}};
  s.budget = 5;
  const auto a = exact_cover_search(s);
  CHECK(a.outcome == SearchOutcome::Budget);
  s.budget = 10'000'000;
  s.seed = 7;
  const auto b = exact_cover_search(s);
  const auto c = exact_cover_search(s);
  REQUIRE(b.outcome == SearchOutcome::Found);
  CHECK(b.nodes == c.nodes);
  CHECK(b.trace == c.trace);
  CHECK(b.multispread->members() == c.multispread->members());
  s.threads = 3;
  const auto d = exact_cover_search(s);
  CHECK(d.nodes == b.nodes);
  CHECK(d.trace == b.trace);
  CHECK(d.multispread->members() == b.multispread->members());
}

TEST_CASE("Singer orbits") {
  const auto sys = singer_orbits(2, 9, 7, {3});
  std::size_t fixed = 0;
  for (const auto& o : sys.orbits()) {
    CHECK((o.size == 1 || o.size == 7));
    fixed += o.size == 1;
  }
  CHECK(fixed == 73);
  CHECK(sys.vector_orbits().size() == 73);

  const auto six = singer_orbits(2, 6, 7, {4});
  for (const auto& o : six.orbits()) CHECK(o.size == 7);
  CHECK(six.orbits().size() * 7 == Space::over(2, 6).gaussian_binomial(4));

  // The aggregated profile matches a direct count over the orbit.
  const auto sp = six.space();
  for (std::size_t i = 0; i < 20 && i < six.orbits().size(); ++i) {
    const auto& o = six.orbits()[i];
    const auto members = six.expand(o.representative);
    CHECK(members.size() == o.size);
    for (auto [x, amount] : six.profile(o)) {
      const Vec v = six.vector_orbits()[x];
      std::int64_t direct = 0;
      for (const auto& u : members) direct += sp.contains(u, v);
      CHECK(direct == amount);
    }
  }
  CHECK(code_of([] { singer_orbits(2, 6, 5, {2}); }) == Errc::OrderNotDividing);
}

TEST_CASE("group-invariant search") {
  auto s = spec(2, 4, 2, 0, 1);
  s.group_order = 5;
  auto r = exact_cover_search(s);
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->n() == 5);

  s = spec(2, 6, 3, 0, 1);
  s.group_order = 9;
  r = exact_cover_search(s);
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->n() == 9);

  // Under the full Singer cycle of F_8 points come in one orbit of 7.
  s = spec(2, 3, 2, 1, 2);
  s.group_order = 7;
  CHECK(exact_cover_search(s).outcome == SearchOutcome::Exhausted);
  s = spec(2, 3, 2, 0, 3);
  s.group_order = 7;
  r = exact_cover_search(s);
  REQUIRE(r.outcome == SearchOutcome::Found);
  CHECK(r.multispread->n() == 7);
}
