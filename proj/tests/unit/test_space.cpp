#include <cmath>
#include <set>

#include "doctest.h"
#include "multispread/errors.hpp"
#include "multispread/space.hpp"

using namespace mspread;

namespace {

// Brute-force count: distinct spans of all d-tuples of vectors.
std::uint64_t brute_count(const Space& sp, int d) {
  std::set<Subspace> seen;
  std::vector<Vec> pick(d, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == d) {
      auto s = sp.span(pick);
      if (s.dim() == d) seen.insert(s);
      return;
    }
    for (Vec v = 1; v < sp.size(); ++v) {
      pick[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return seen.size();
}

}  // namespace

TEST_CASE("vector encoding puts the first coordinate on top") {
  auto sp = Space::over(2, 3);
  CHECK(sp.unit(0) == 4);
  CHECK(sp.unit(2) == 1);
  CHECK(sp.coords(6) == std::vector<Elem>{1, 1, 0});
  CHECK(sp.format_vector(7) == "0x7");
  CHECK(sp.parse_vector("0x5") == 5);
  CHECK(sp.parse_vector("5") == 5);
  CHECK(sp.digit_string(3) == "011");
  CHECK(sp.from_digit_string("110") == 6);

  auto s3 = Space::over(3, 3);
  CHECK(s3.from_coords({1, 2, 0}) == 15);
  CHECK(s3.add(15, 15) == s3.from_coords({2, 1, 0}));
  CHECK(s3.neg(s3.from_coords({1, 2, 0})) == s3.from_coords({2, 1, 0}));
  CHECK(s3.dot(s3.from_coords({1, 1, 1}), s3.from_coords({1, 1, 1})) == 0);
  CHECK(s3.format_vector(15) == "15");
}

TEST_CASE("span is canonical") {
  auto sp = Space::over(2, 3);
  auto a = sp.span({0x6, 0x3});
  auto b = sp.span({0x5, 0x3, 0x6});
  CHECK(a == b);
  CHECK(a.dim() == 2);
  CHECK(a.basis() == std::vector<Vec>{0x5, 0x3});
  CHECK(sp.to_string(a) == "<101,011>");
  CHECK(sp.span({}).is_zero());
  CHECK(sp.span({0, 0}).is_zero());
  CHECK(sp.span({7, 1, 2}) == sp.full());
}

TEST_CASE("subspace counts match the q-binomials") {
  CHECK(Space::over(2, 3).gaussian_binomial(1) == 7);
  CHECK(Space::over(2, 5).gaussian_binomial(2) == 155);
  CHECK(Space::over(2, 4).gaussian_binomial(2) == 35);
  CHECK(Space::over(3, 4).gaussian_binomial(2) == 130);
  CHECK(Space::over(2, 6).gaussian_binomial(3) == 1395);
  CHECK(Space::over(4, 3).gaussian_binomial(1) == 21);
  for (auto [q, m, d] : {std::tuple{2, 3, 1}, {2, 4, 2}, {2, 5, 2}, {3, 3, 1}, {3, 3, 2}, {4, 3, 2},
                         {2, 5, 3}, {5, 2, 1}}) {
    auto sp = Space::over(q, m);
    CAPTURE(q);
    CAPTURE(m);
    CAPTURE(d);
    auto all = sp.enumerate_subspaces(d);
    CHECK(all.size() == sp.gaussian_binomial(d));
    CHECK(std::set<Subspace>(all.begin(), all.end()).size() == all.size());
    for (auto& s : all) REQUIRE(s.dim() == d);
    if (sp.size() <= 32 && d <= 2) CHECK(brute_count(sp, d) == all.size());
  }
  CHECK(Space::over(2, 4).gaussian_binomial(0) == 1);
  CHECK(Space::over(2, 4).gaussian_binomial(4) == 1);
  CHECK(Space::over(2, 4).gaussian_binomial(5) == 0);
}

TEST_CASE("sum and intersection obey the dimension formula") {
  for (std::uint64_t q : {2, 3, 4}) {
    auto sp = Space::over(q, 4);
    auto twos = sp.enumerate_subspaces(2);
    for (std::size_t i = 0; i < twos.size(); i += 3)
      for (std::size_t j = 0; j < twos.size(); j += 5) {
        auto s = sp.sum(twos[i], twos[j]);
        auto x = sp.intersect(twos[i], twos[j]);
        REQUIRE(s.dim() + x.dim() == 4);
        REQUIRE(sp.includes(s, twos[i]));
        REQUIRE(sp.includes(twos[j], x));
        // brute-force intersection
        std::size_t common = 0;
        sp.for_each_vector(twos[i], [&](Vec v) { common += sp.contains(twos[j], v); });
        REQUIRE(common == static_cast<std::size_t>(std::pow(q, x.dim()) + 0.5));
      }
  }
}

TEST_CASE("complement is an involution with orthogonal vectors") {
  for (std::uint64_t q : {2, 3, 5}) {
    auto sp = Space::over(q, 3);
    for (int d = 0; d <= 3; ++d)
      for (auto& s : sp.enumerate_subspaces(d)) {
        auto c = sp.complement(s);
        REQUIRE(c.dim() == 3 - d);
        REQUIRE(sp.complement(c) == s);
        for (Vec a : s.basis())
          for (Vec b : c.basis()) REQUIRE(sp.dot(a, b) == 0);
      }
  }
}

TEST_CASE("mixing ambients is rejected") {
  auto a = Space::over(2, 3);
  auto b = Space::over(2, 4);
  auto s = b.span({1});
  try {
    a.check(s);
    FAIL("expected MixedAmbient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MixedAmbient);
  }
  CHECK_THROWS_AS(a.sum(a.span({1}), s), Error);
}

TEST_CASE("enumeration guard") {
  auto big = Space::over(2, 40);
  try {
    big.for_each_subspace(20, [](const Subspace&) {});
    FAIL("expected AmbientTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AmbientTooLarge);
  }
}

TEST_CASE("for_each_vector visits q^dim distinct vectors") {
  auto sp = Space::over(3, 4);
  auto s = sp.span({sp.from_coords({1, 0, 2, 1}), sp.from_coords({0, 1, 1, 1})});
  std::set<Vec> seen;
  sp.for_each_vector(s, [&](Vec v) { seen.insert(v); });
  CHECK(seen.size() == 9);
  CHECK(seen.count(0) == 1);
  for (Vec v : seen) CHECK(sp.reduce(s, v) == 0);
}

TEST_CASE("digit strings for q > 10 use separators") {
  auto sp = Space::over(11, 2);
  auto v = sp.from_coords({10, 3});
  CHECK(sp.digit_string(v) == "10:3");
  CHECK(sp.from_digit_string("10:3") == v);
}
