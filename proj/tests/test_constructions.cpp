#include <doctest.h>

#include "gridgon/constructions.hpp"
#include "gridgon/reference_values.hpp"

using namespace gridgon;

namespace {

int straight_angles(const tour& t) {
  int k = 0;
  for (const auto& v : validate_tour(t, true).violations) k += v.kind == violation_kind::straight_angle;
  return k;
}

errc code_of(auto&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return errc::invalid_input;
}

}  // namespace

TEST_CASE("serpentine matches its closed form") {
  CHECK(score(serpentine(9, rational(1, 3))) == 1110);
  for (int n = 4; n <= 30; ++n)
    for (rational th : {rational(1, 4), rational(1, 3), rational(1, 2) - rational(1, n)}) {
      if (th <= 0 || n * th < 1) continue;
      tour t = serpentine(n, th);
      CAPTURE(n);
      CHECK(validate_tour(t, false).valid);
      CHECK(big(score(t)) == serpentine_sum(n, th));
    }
  CHECK(code_of([] { serpentine(4, rational(1, 5)); }) == errc::out_of_range);
}

TEST_CASE("first approximation matches beta") {
  CHECK(score(first_approximation(5)) == 98);
  CHECK(score(first_approximation(6)) == 232);
  for (int n = 5; n <= 40; ++n) {
    tour t = first_approximation(n);
    CAPTURE(n);
    CHECK(validate_tour(t, false).valid);
    CHECK(big(score(t)) == beta(n));
  }
  CHECK(code_of([] { first_approximation(4); }) == errc::out_of_range);
}

TEST_CASE("fjord polygons match their closed form for every fjord count") {
  CHECK(score(fjord_polygon(7, 1, 2)) == 462);
  CHECK(score(fjord_polygon(9, 2, 2)) == 1424);
  CHECK(score(fjord_polygon(14, 3, 4)) == 9436);
  for (int n = 7; n <= 16; ++n)
    for (int p = 1; p <= n - 3; ++p)
      for (int q = 1; q <= n - 3; ++q) {
        tour t = fjord_polygon(n, p, q);
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(validate_tour(t, false).valid);
        CHECK(big(score(t)) == fjord_sum(n, p, q));
      }
  CHECK(code_of([] { fjord_polygon(9, 7, 1); }) == errc::out_of_range);
}

TEST_CASE("fjord polygons at the best counts reach alpha") {
  for (int n = 9; n <= 20; ++n)
    for (const auto& c : optimal_fjords(n).choices) {
      tour t = fjord_polygon(n, c.p, c.q);
      CAPTURE(n);
      CHECK(validate_tour(t, false).valid);
      CHECK(big(score(t)) == c.value);
    }
}

TEST_CASE("proper polygons") {
  CHECK(score(proper_polygon(2)) == 4);
  CHECK(validate_tour(proper_polygon(2), true).valid);
  CHECK(score(proper_polygon(4)) == 20);
  CHECK(code_of([] { proper_polygon(3); }) == errc::no_proper_polygon);
  CHECK(code_of([] { proper_polygon(5); }) == errc::no_proper_polygon);
  CHECK(code_of([] { proper_polygon(1); }) == errc::out_of_range);
  for (int n : {4, 6, 7, 8, 9, 10, 11, 12, 13, 16, 20, 25, 31, 40}) {
    tour t = proper_polygon(n);
    CAPTURE(n);
    CHECK(validate_tour(t, true).valid);
    CHECK(straight_angles(t) == 0);
    long long nn = n;
    CHECK(score(t) >= nn * nn * nn * nn / 4 - proper_cubic_constant * nn * nn * nn);
  }
}

TEST_CASE("proper polygons never exceed the best known values") {
  for (const auto& t : reference::a0_terms) {
    if (t.n == 3 || t.n == 5) continue;
    CAPTURE(t.n);
    CHECK(score(proper_polygon(t.n)) <= t.value);
  }
}

TEST_CASE("construct dispatch and closed forms") {
  construction_spec s{construction_kind::fjord, 7, rational(1, 3), 1, 2};
  CHECK(score(construct(s)) == 462);
  CHECK(*closed_form_score(s) == 462);
  s = {construction_kind::first_approx, 6};
  CHECK(*closed_form_score(s) == 232);
  s = {construction_kind::proper, 6};
  CHECK_FALSE(closed_form_score(s).has_value());
  CHECK(parse_construction_kind("fjord") == construction_kind::fjord);
  CHECK(parse_construction_kind("first") == construction_kind::first_approx);
  CHECK_FALSE(parse_construction_kind("spiral").has_value());
}
