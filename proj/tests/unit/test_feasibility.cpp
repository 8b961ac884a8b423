#include <optional>

#include "doctest.h"
#include "multispread/errors.hpp"
#include "multispread/feasibility.hpp"
#include "multispread/int_math.hpp"

using namespace mspread;

namespace {

// All nonnegative b_0..b_imax solving the b_i equation, lexicographically smallest.
std::optional<std::vector<std::int64_t>> brute_bi(std::int64_t q, int m, int t, std::int64_t mu) {
  const int imx = i_max(q, t, mu);
  const std::int64_t target = mu * (ipow(q, m) - 1);
  std::vector<std::int64_t> b(static_cast<std::size_t>(imx) + 1, 0);
  std::optional<std::vector<std::int64_t>> best;
  const auto rec = [&](auto&& self, int i, std::int64_t rest) -> void {
    const std::int64_t w = ipow(q, t) - ipow(q, i);
    if (i == imx) {
      if (rest % w == 0) {
        b[static_cast<std::size_t>(i)] = rest / w;
        if (!best || b < *best) best = b;
      }
      return;
    }
    for (std::int64_t k = 0; k * w <= rest; ++k) {
      b[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, rest - k * w);
    }
  };
  rec(rec, 0, target);
  return best;
}

}  // namespace

TEST_CASE("congruence floor") {
  CHECK(lambda_min_congruence(2, 5, 3, 2) == 1);
  CHECK(lambda_min_congruence(3, 5, 3, 4) == 20);
  CHECK(lambda_min_congruence(2, 9, 4, 2) == 13);
  CHECK(lambda_min_congruence(2, 3, 2, 2) == 1);
}

TEST_CASE("congruence floor is stable under adding folds and under m -> m + t") {
  for (std::int64_t q : {2, 3, 4, 5})
    for (int t = 2; t <= 4; ++t)
      for (int m = t; m <= t + 4; ++m)
        for (std::int64_t mu = 1; mu <= 12; ++mu) {
          const int s = std::gcd(t, m);
          const std::int64_t d = (ipow(q, t) - 1) / (ipow(q, s) - 1);
          const auto l = lambda_min_congruence(q, m, t, mu);
          CHECK(lambda_min_congruence(q, m, t, mu + d) == l);
          CHECK(lambda_min_congruence(q, m + t, t, mu) == l);
        }
}

TEST_CASE("b_i decomposition") {
  CHECK_FALSE(bi_decomposition(2, 5, 4, 2).has_value());
  CHECK(bi_decomposition(2, 5, 3, 2) == std::vector<std::int64_t>{2, 8});
  // i_max(2,2,1) = 0, so only b_0 is free: 15 = 3 * 5.
  CHECK(bi_decomposition(2, 4, 2, 1) == std::vector<std::int64_t>{5});
  CHECK(i_max(2, 2, 1) == 0);
  CHECK(i_max(2, 4, 100) == 3);
}

TEST_CASE("b_i decomposition matches brute force") {
  for (std::int64_t q : {2, 3})
    for (int t = 2; t <= 4; ++t)
      for (int m = t; m <= t + 3; ++m)
        for (std::int64_t mu = 1; mu <= 9; ++mu) {
          CAPTURE(q);
          CAPTURE(t);
          CAPTURE(m);
          CAPTURE(mu);
          CHECK(bi_decomposition(q, m, t, mu) == brute_bi(q, m, t, mu));
        }
}

TEST_CASE("interval test is implied by a decomposition") {
  for (std::int64_t q : {2, 3, 4})
    for (int t = 2; t <= 4; ++t)
      for (int m = t; m <= t + 3; ++m)
        for (std::int64_t mu = 1; mu <= 9; ++mu)
          if (bi_decomposition(q, m, t, mu)) CHECK(n0_interval_holds(q, m, t, mu));
}

TEST_CASE("oracle examples") {
  auto v = oracle(2, 5, 4, 2);
  CHECK(v.status == Status::Infeasible);
  CHECK(v.reason == "corollary:c:l2452");
  CHECK(oracle(2, 5, 4, 3).status == Status::Infeasible);

  v = oracle(2, 5, 4, 4, 11);
  CHECK(v.status == Status::Feasible);
  CHECK(v.reason == "theorem:th:t=4m=5");

  v = oracle(4, 5, 3, 5, 51);
  CHECK(v.status == Status::Unknown);
  CHECK(v.reason.empty());

  v = oracle(2, 6, 3, 7, 0);
  CHECK(v.status == Status::Feasible);
  CHECK(v.reason == "lemma:l:fold");

  CHECK_THROWS_AS(oracle(6, 5, 3, 2), Error);
  CHECK_THROWS_AS(oracle(2048, 5, 3, 2), Error);
}

TEST_CASE("oracle on characterized cells") {
  // t = 2: every mu >= q works, least lambda is the congruence floor.
  for (std::int64_t q : {2, 3, 4, 5})
    for (int m = 2; m <= 6; ++m)
      for (std::int64_t mu = q; mu <= 2 * q + 3; ++mu) {
        const auto v = oracle(q, m, 2, mu);
        CHECK(v.status == Status::Feasible);
        if (m % 2 == 1) CHECK(v.lambda_min == lambda_min_congruence(q, m, 2, mu));
      }
  CHECK(oracle(2, 5, 3, 2, 1).status == Status::Feasible);
  CHECK(oracle(2, 5, 3, 2, 2).status == Status::Infeasible);
  CHECK(oracle(2, 9, 4, 2, 13).status == Status::Feasible);
  CHECK(oracle(2, 5, 4, 5, 10).status == Status::Feasible);
  CHECK(oracle(2, 5, 4, 1).status == Status::Infeasible);
}

TEST_CASE("minimum lambda") {
  CHECK(min_lambda_existence(2, 2, 3, 2) == 1);
  CHECK(min_lambda_existence(2, 3, 2, 2) == 1);
  CHECK_FALSE(min_lambda_existence(2, 4, 3, 1).has_value());
  CHECK(oracle(2, 4, 3, 1).status == Status::Infeasible);
  CHECK_FALSE(min_lambda_existence(4, 5, 3, 5).has_value());
}

TEST_CASE("adding q^t - 1 to lambda keeps feasibility") {
  for (std::int64_t q : {2, 3})
    for (int t = 2; t <= 4; ++t)
      for (int m = 2; m <= 7; ++m)
        for (std::int64_t mu = 0; mu <= 6; ++mu) {
          const std::int64_t w = ipow(q, t) - 1;
          for (std::int64_t l = 0; l <= 3 * w; ++l) {
            if (oracle(q, m, t, mu, l).status != Status::Feasible) continue;
            CAPTURE(q);
            CAPTURE(m);
            CAPTURE(t);
            CAPTURE(mu);
            CAPTURE(l);
            CHECK(oracle(q, m, t, mu, l + w).status == Status::Feasible);
          }
        }
}

TEST_CASE("plans add up to their target") {
  for (std::int64_t q : {2, 3})
    for (int t = 2; t <= 4; ++t)
      for (int m = 2; m <= 8; ++m)
        for (std::int64_t mu = 0; mu <= 8; ++mu) {
          const auto v = oracle(q, m, t, mu);
          if (v.status != Status::Feasible) continue;
          const auto plan = make_plan(q, m, t, mu);
          if (!plan) continue;
          CHECK(plan->total_mu() == mu);
          CHECK(plan->total_lambda() == plan->target.lambda);
          if (v.lambda_min) CHECK(plan->target.lambda == *v.lambda_min);
        }
}
