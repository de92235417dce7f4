#include <doctest.h>

#include <cmath>

#include "lionman/bounds.hpp"
#include "lionman/error.hpp"
#include "lionman/verify.hpp"

using namespace lionman;

namespace {

// plain re-derivation of the moving-center bound
int recursion_oracle(double m0) {
  double b = m0;
  int t = 0;
  while (b > 1.0) {
    b = b * (b - 1.0) / (std::sqrt(1.0 + b * b) - 1.0);
    ++t;
  }
  return t + 1;
}

}  // namespace

TEST_CASE("fixed-center bound") {
  CHECK(fcls_bound(3) == 9);
  CHECK(fcls_bound(1) == 1);
  CHECK(fcls_bound(2.5) == 7);
  CHECK(fcls_bound(0.5) == 1);
  CHECK(fcls_bound(10) == 100);
}

TEST_CASE("one recursion step") {
  CHECK(recursion_step(2) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(recursion_step(3) == doctest::Approx(6 / (std::sqrt(10.0) - 1)).epsilon(1e-15));
  // hand-evaluated 2.7748651 is off in the 5th digit; double precision gives 2.7748518
  CHECK(recursion_step(3) == doctest::Approx(2.7748517734).epsilon(1e-9));
  try {
    recursion_step(1.0);
    FAIL("expected Domain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Domain);
  }
}

TEST_CASE("recursion step equals the worst case at r = m") {
  for (double b : {1.5, 2.0, 5.0}) {
    const double via_lemma = lemma2_closed_form(ArcInstance::make(b, b, std::sqrt(1 + b * b)));
    CHECK(std::abs(via_lemma - recursion_step(b)) <= 1e-12 * recursion_step(b));
  }
}

TEST_CASE("moving-center bound values") {
  CHECK(mcls_bound(1) == 1);
  CHECK(mcls_bound(2) == 4);
  CHECK(mcls_bound(3) == 7);
  const auto seq = mcls_recursion(2);
  REQUIRE(seq.size() == 4);
  CHECK(seq[1] == doctest::Approx(1.6180340).epsilon(1e-7));
  CHECK(seq[2] == doctest::Approx(1.1085085393).epsilon(1e-9));
  CHECK(seq[3] == doctest::Approx(0.2440237577).epsilon(1e-9));
}

TEST_CASE("recursion oracle over a dense grid") {
  for (int i = 0; i <= 4900; ++i) {
    const double m0 = 1.0 + i * 0.01;
    CHECK(mcls_bound(m0) == recursion_oracle(m0));
    CHECK(mcls_bound(m0) <= fcls_bound(m0));
  }
}

TEST_CASE("bound series") {
  const auto one = bounds_series(1, 1, 0.3).rows;
  REQUIRE(one.size() == 1);
  CHECK(one[0].m0 == 1.0);
  CHECK(one[0].n_fcls == 1);
  CHECK(one[0].n_mcls == 1);

  const auto rows = bounds_series(2, 3, 0.5).rows;
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n_fcls == 4);
  CHECK(rows[0].n_mcls == 4);
  CHECK(rows[1].n_fcls == 7);
  CHECK(rows[1].n_mcls == recursion_oracle(2.5));
  CHECK(rows[2].n_fcls == 9);
  CHECK(rows[2].n_mcls == 7);

  const auto full = bounds_series(1, 10, 0.05).rows;
  CHECK(full.size() == 181);
  CHECK(full.back().m0 == 10.0);
  for (const auto& r : full) CHECK(r.n_mcls <= r.n_fcls);
}

TEST_CASE("bounds csv") {
  const std::string csv = bounds_csv(bounds_series(2, 3, 0.5));
  CHECK(csv == "m0,n_fcls,n_mcls\n2,4,4\n2.5,7,5\n3,9,7\n");
}
