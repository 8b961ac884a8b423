#include <random>
#include <set>

#include "doctest.h"
#include "multispread/catalog.hpp"
#include "multispread/code_bridge.hpp"
#include "multispread/constructions.hpp"
#include "multispread/int_math.hpp"

using namespace mspread;

namespace {

Multispread example1() {
  const Space sp = Space::over(2, 3);
  return Multispread::verified(sp,
                               to_member_map({sp.span({7}), sp.span({2, 1}), sp.span({4, 1}),
                                              sp.span({4, 2}), sp.span({6, 3})}),
                               2);
}

const char* kExample =
    "matrix v1\n"
    "q=2 m=3 n=5 t=2\n"
    "1 0 1 0 1 0 0 0 1 0\n"
    "1 0 0 0 1 1 1 0 0 1\n"
    "1 0 0 1 0 1 0 1 0 0\n";

std::multiset<Subspace> block_spans(const CodeMatrix& mat) {
  const Space sp(mat.field, mat.m);
  std::multiset<Subspace> out;
  for (int j = 0; j < mat.n; ++j) {
    std::vector<Vec> cols;
    for (int c = 0; c < mat.t; ++c) cols.push_back(mat.column(sp, j * mat.t + c));
    out.insert(sp.span(cols));
  }
  return out;
}

}  // namespace

TEST_CASE("generator matrix of the Fano example") {
  const auto mat = generator_matrix(example1());
  CHECK(mat.m == 3);
  CHECK(mat.n == 5);
  CHECK(mat.t == 2);
  const auto example = parse_matrix(kExample);
  CHECK(block_spans(mat) == block_spans(example));
  // <111> is padded with a zero column.
  bool padded = false;
  const Space sp = Space::over(2, 3);
  for (int j = 0; j < mat.n; ++j)
    if (mat.column(sp, 2 * j) == 7) padded = mat.column(sp, 2 * j + 1) == 0;
  CHECK(padded);

  const auto p = check_one_weight(example);
  CHECK(p.to_string() == "[5,1.5,4]_4");
  CHECK(p.b == 14);
  CHECK(p.c == 2);
  CHECK(p.lambda == 1);
  CHECK(p.mu == 2);
  CHECK_FALSE(p.rank_deficient);

  const auto cp = code_params(example1());
  CHECK(cp.w == 4);
  CHECK(cp.b == 14);
  CHECK(cp.c == 2);
  CHECK(cp.cr_base == 2);
  CHECK(cp.cr_exponent == 7);
  CHECK(multispread_from_matrix(example).params() == example1().params());
}

TEST_CASE("small codes") {
  const Space sp = Space::over(2, 2);
  const auto whole = Multispread::verified(sp, to_member_map({sp.full()}), 2);
  const auto mat = generator_matrix(whole);
  CHECK(mat.rows == std::vector<std::vector<Elem>>{{1, 0}, {0, 1}});
  CHECK(check_one_weight(mat).w == 1);

  CodeMatrix simplex{Field::of_order(2), 2, 3, 1, {{0, 1, 1}, {1, 0, 1}}};
  const auto p = check_one_weight(simplex);
  CHECK(p.w == 2);
  CHECK(p.mu == 1);
  CHECK(p.lambda == 0);

  CodeMatrix bad{Field::of_order(2), 2, 2, 1, {{1, 0}, {1, 1}}};
  CHECK_THROWS_AS(check_one_weight(bad), NotOneWeightError);

  CodeMatrix dependent{Field::of_order(2), 3, 3, 1, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};
  const auto d = check_one_weight(dependent);
  CHECK(d.rank_deficient);
  CHECK(d.rank == 2);
  CHECK(d.w == 2);

  const auto zero = Multispread::verified(sp, to_member_map({sp.zero()}), 2);
  try {
    generator_matrix(zero);
    FAIL("expected ZeroMu");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroMu);
  }
}

TEST_CASE("catalog (9,3;4,7)_2 gives a 7 x 104 matrix") {
  const auto mat = generator_matrix(*catalog_entry("q2-m7-l9-mu3").multispread);
  CHECK(mat.m == 7);
  CHECK(mat.n == 26);
  CHECK(mat.rows[0].size() == 104);
  CHECK(check_one_weight(mat).w == 3 * 8);
  const auto p = code_params(*catalog_entry("q2-m9-l13-mu2").multispread);
  CHECK(p.w == 64);
  CHECK(p.n == 69);
}

TEST_CASE("spreads give b = n(q^t-1) and c = 1") {
  const auto ms = fold_spread(Field::of_order(3), 2, 4, 1);
  const auto p = code_params(ms);
  CHECK(p.w == 9);
  CHECK(p.b == p.n * 8);
  CHECK(p.c == 1);
}

TEST_CASE("phi expansion") {
  const Field f2 = Field::of_order(2);
  CHECK(phi_expand(f2, {1, 0}, 2) == std::vector<Elem>{1, 0, 1});
  CHECK(phi_expand(f2, {0, 1}, 2) == std::vector<Elem>{0, 1, 1});
  CHECK(phi_expand(f2, {0, 0, 0, 0}, 2) == std::vector<Elem>(6, 0));
  try {
    phi_expand(f2, {1, 0, 1}, 2);
    FAIL("expected WidthNotMultipleOfT");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WidthNotMultipleOfT);
  }
  for (std::uint64_t q : {2, 3, 4})
    for (int t = 1; t <= 3; ++t) {
      const Field f = Field::of_order(q);
      std::mt19937_64 rng(q * 10 + static_cast<std::uint64_t>(t));
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<Elem> w(static_cast<std::size_t>(4 * t));
        for (auto& x : w) x = static_cast<Elem>(rng() % q);
        const auto scale = static_cast<std::int64_t>(q - 1) * ipow(static_cast<std::int64_t>(q), t - 1);
        CHECK(hamming_weight(phi_expand(f, w, t)) == scale * block_weight(w, t));
      }
    }
}

TEST_CASE("one-weight equivalence on constructed instances, both directions") {
  const Field f2 = Field::of_order(2);
  const std::vector<Multispread> cases = {
      example1(), fold_spread(f2, 2, 4, 1), desarguesian_46(f2, 1), recipe(3, 3, 2, 2, 3).multispread,
      *catalog_entry("X2").multispread,
  };
  for (const auto& ms : cases) {
    auto mat = generator_matrix(ms);
    const auto p = check_one_weight(mat);
    CHECK(p.w == code_params(ms).w);
    CHECK(p.w == ms.mu() * ipow(ms.space().q(), ms.space().m() - ms.t()));
    // Replacing the first column of the first block by a vector outside its span
    // breaks uniform coverage, and the code stops being one-weight.
    const Space& sp = ms.space();
    Vec other = 0;
    std::vector<Vec> block;
    for (int c = 0; c < mat.t; ++c) block.push_back(mat.column(sp, c));
    const auto span = sp.span(block);
    for (Vec v = 1; v < sp.size(); ++v)
      if (!sp.contains(span, v)) {
        other = v;
        break;
      }
    REQUIRE(other != 0);
    auto broken = mat;
    for (int i = 0; i < mat.m; ++i) broken.rows[static_cast<std::size_t>(i)][0] = sp.coord(other, i);
    CHECK_THROWS_AS(check_one_weight(broken), NotOneWeightError);
  }
}

TEST_CASE("matrix files") {
  const auto mat = generator_matrix(recipe(4, 3, 2, 3, 4).multispread);
  const auto text = serialize_matrix(mat);
  CHECK(text.find("modulus=0x7") != std::string::npos);
  const auto back = parse_matrix(text);
  CHECK(back.rows == mat.rows);
  CHECK(back.n == mat.n);
  CHECK_THROWS_AS(parse_matrix("matrix v1\nq=2 m=2 n=1 t=2\n1 0\n"), Error);
  CHECK_THROWS_AS(parse_matrix("matrix v1\nq=2 m=1 n=1 t=2\n1 2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_matrix("matrix v2\n"), SyntaxError);
}
