#include "doctest.h"
#include "multispread/catalog.hpp"
#include "multispread/errors.hpp"

using namespace mspread;

TEST_CASE("every catalog instance verifies with its stated parameters") {
  for (const auto& e : catalog_expectations()) {
    CAPTURE(e.name);
    CHECK(check_catalog_entry(e) == "");
  }
}

TEST_CASE("the four (5,3;3,5)_2 instances are pairwise distinct") {
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      CHECK(catalog_entry("X" + std::to_string(i)).multispread->members() !=
            catalog_entry("X" + std::to_string(j)).multispread->members());
}

TEST_CASE("the m = 9 partition doubles into (28,2;4,9)_2") {
  const auto& part = *catalog_entry("q2-m9-partition").partition;
  MemberMap doubled;
  for (const auto& [u, k] : part.members()) doubled[u] = u.dim() == 4 ? 2 * k : k;
  const auto ms = Multispread::verified(part.space(), doubled, 4);
  CHECK(ms.lambda() == 28);
  CHECK(ms.mu() == 2);
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(catalog_entry("A9"), Error);
  try {
    catalog_entry("nope");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownCatalogEntry);
  }
  CHECK(catalog_names().size() == 10);
}
