#include <doctest.h>

#include <json.hpp>

#include "etalab/error.hpp"
#include "etalab/lacunarity.hpp"
#include "etalab/modform.hpp"

using namespace etalab;

namespace {
const NormalForm G = parse_normal_form("eta(18)^3/eta(1)");
const NormalForm H = parse_normal_form("geta(9,0)/geta(6,1)");
const NormalForm P = parse_normal_form("1/eta(1)");
}  // namespace

TEST_CASE("thm1 verdicts on eta(18)^3/eta(1)") {
  const auto v3 = thm1_check(G, 3, 2);
  CHECK(v3.bound_sq == 6);
  CHECK(v3.satisfied);
  CHECK(v3.reason == "ok");
  CHECK_FALSE(v3.positivity.has_value());

  const auto v2 = thm1_check(G, 2, 1);
  CHECK(v2.bound_sq == 6);
  CHECK_FALSE(v2.satisfied);
  CHECK(v2.reason == "bound_not_met");

  const auto v5 = thm1_check(G, 5);
  CHECK_FALSE(v5.satisfied);
  CHECK(v5.reason == "pa_not_dividing_D");

  CHECK(thm1_check(G, 3).a == 2);  // default: largest a
  CHECK(thm1_check(G, 3, 3).reason == "pa_not_dividing_D");
  CHECK(thm1_check(G, 3, 1).satisfied);
}

TEST_CASE("thm1 inapplicable cases") {
  CHECK(thm1_check(G, 4).reason == "p_not_prime");
  CHECK(thm1_check(G, 3, 0).reason == "a_not_positive");
  CHECK(thm1_check(P, 2).reason == "non_integer_weight");
  CHECK(thm1_check(parse_normal_form("1/eta(1)^2"), 2).reason == "empty_numerator");
  CHECK(thm1_check(parse_normal_form("eta(2)^3/eta(1)^2"), 2).reason == "non_integer_weight");
  CHECK(thm1_check(H, 3).reason == "generalized_factors");
  for (const auto& v : {thm1_check(P, 2), thm1_check(H, 3), thm1_check(G, 4)}) CHECK_FALSE(v.satisfied);
}

TEST_CASE("thm1 on t-regular forms: p^a | t and p^2a >= t") {
  for (std::int64_t t : {4, 8, 9, 16, 25, 27}) {
    const NormalForm nf = normalize(build_named(Family::t_regular, {t, 1}));
    for (std::int64_t p : {2, 3, 5}) {
      for (std::int64_t a = 1; ipow(p, static_cast<unsigned>(a)) <= t; ++a) {
        const std::int64_t pa = ipow(p, static_cast<unsigned>(a));
        const bool expected = t % pa == 0 && pa * pa >= t;
        CHECK(thm1_check(nf, p, a).bound_sq == t);
        CHECK(thm1_check(nf, p, a).satisfied == expected);
      }
    }
  }
}

TEST_CASE("thm1 is order-independent") {
  const NormalForm a = parse_normal_form("eta(10)*eta(30)^2/eta(1)/eta(3)");
  const NormalForm b = parse_normal_form("1/eta(3)*eta(30)^2/eta(1)*eta(10)");
  CHECK(thm1_check(a, 5).bound_sq == thm1_check(b, 5).bound_sq);
  CHECK(thm1_check(parse_normal_form("eta(10)*eta(30)^2/eta(1)"), 5).bound_sq == 6);
  CHECK(thm1_check(parse_normal_form("eta(10)*eta(30)^2/eta(1)"), 5).satisfied);
}

TEST_CASE("thm3 verdicts") {
  const auto v = thm3_check(H, 3, 2);
  REQUIRE(v.positivity.has_value());
  CHECK(*v.positivity == Rational(1, 9));
  CHECK(v.bound_sq == 54);
  CHECK(v.satisfied);
  CHECK(thm3_check(H, 3).a == 2);
  CHECK(thm3_check(H, 5).reason == "pa_not_dividing_D");

  const auto pure = thm3_check(parse_normal_form("geta(10,0)"), 5);
  CHECK(pure.bound_sq == 0);
  CHECK(pure.satisfied);

  const auto neg = thm3_check(parse_normal_form("geta(10,3)/geta(5,0)"), 5);
  CHECK(neg.reason == "nonpositive_positivity");
  CHECK_FALSE(neg.satisfied);

  // ordinary factors are read as zero-class factors with half the exponent
  CHECK(thm3_check(G, 3).bound_sq == Rational(1, 2) / Rational(1, 12));
  CHECK(lacunarity_check(H, 3).criterion == Criterion::thm3);
  CHECK(lacunarity_check(G, 3).criterion == Criterion::thm1);
}

TEST_CASE("cor2 bounds") {
  CHECK(cor2_bounds(18, 3).part1_sq == 6);
  const auto b = cor2_bounds(27, 25);
  CHECK(b.part2_sq == make_rational(4 * 8775, 118));
  CHECK(Rational(729) >= b.part2_sq);
  const auto c = cor2_bounds(4, 1);
  CHECK(c.part2_sq == Rational(4 * 292, 31));
  CHECK(c.part2_sq > 16);
  CHECK_THROWS_AS(cor2_bounds(3, 3), Error);
  CHECK_THROWS_AS(cor2_bounds(3, 5), Error);
  CHECK_THROWS_AS(cor2_bounds(8, 2), Error);
  CHECK_THROWS_AS(cor2_bounds(8, 0), Error);
}

TEST_CASE("cor2 part 2 is thm1 on the y = -1 quotient") {
  for (std::int64_t t = 2; t <= 30; ++t)
    for (std::int64_t z = 1; z < t; z += 2) {
      const NormalForm nf = normalize(build_named(Family::han_ym1, {t, z}));
      CHECK(thm1_check(nf, 2).bound_sq == cor2_bounds(t, z).part2_sq);
    }
}

TEST_CASE("companion forms") {
  CHECK(build_companion_f(G, 3, 2) == parse_normal_form("eta(24)^9/eta(216)"));
  CHECK(build_companion_f(parse_normal_form("eta(5)^2"), 5, 1).empty());
  const std::int64_t nt = 24 * 18;
  CHECK(build_companion_f(H, 3, 2) ==
        normalize(EtaExpr{}.times(EtaBase::general(6 * nt, 0), 9).times(EtaBase::general(54 * nt, 0), -1)));
  CHECK(build_companion_F(G, 3, 2, 1) == parse_normal_form("eta(432)^3*eta(24)^26/eta(216)^3"));
  CHECK(profile(build_companion_f(G, 3, 2)).prefix == 0);
  CHECK(profile(build_companion_f(H, 3, 2)).prefix == 0);
  CHECK(companion_dilation(G) == 24);
  CHECK(companion_dilation(H) == nt);
  CHECK_THROWS_AS(build_companion_f(G, 6, 1), Error);
}

TEST_CASE("unit lemma") {
  for (auto [p, a, j] : std::vector<std::array<std::int64_t, 3>>{{3, 2, 0}, {3, 2, 2}, {2, 2, 2}, {5, 1, 1}}) {
    CHECK(verify_unit_lemma(G, p, a, j, 300).ok);
    CHECK(verify_unit_lemma(H, p, a, j, 300).ok);
  }
  CHECK(verify_unit_lemma(parse_normal_form("eta(5)^2"), 5, 1, 0, 50).ok);
}

TEST_CASE("F congruence") {
  CHECK(verify_F_congruence(G, 3, 2, 1, 600).ok);
  CHECK(verify_F_congruence(P, 5, 1, 1, 600).ok);
  CHECK(verify_F_congruence(H, 3, 2, 1, 2000).ok);
  CHECK(verify_F_congruence(G, 2, 1, 0, 300).ok);
}

TEST_CASE("companion holomorphy when the bound holds") {
  for (std::int64_t j : {0, 1}) {
    const NormalForm F = build_companion_F(G, 3, 2, j);
    CHECK(holomorphy_report(F, 186624, Group::gamma0).holomorphic);
  }
  CHECK(holomorphy_report(build_companion_F(H, 3, 2, 1), profile(H).level, Group::gamma1).holomorphic);
  // 2 < sqrt 6: the p = 2 companion of G is not holomorphic
  CHECK_FALSE(holomorphy_report(build_companion_F(G, 2, 1, 1), 186624, Group::gamma0).holomorphic);
}

TEST_CASE("companion weight") {
  const auto w = companion_weight(G, 3, 2, 1);
  CHECK(w.weight == 13);
  CHECK(w.integral);
  CHECK_FALSE(w.warning.has_value());
  CHECK(companion_weight(parse_normal_form("eta(5)^2"), 5, 1, 1).weight == 1);
  const auto half = companion_weight(P, 2, 1, 1);
  CHECK(half.weight == Rational(1, 2));
  CHECK_FALSE(half.integral);
  CHECK(half.warning.has_value());
  CHECK(companion_weight(P, 2, 1, 0).weight == 0);
  CHECK_FALSE(companion_weight(P, 2, 1, 0).warning.has_value());
  CHECK(companion_weight(H, 3, 2, 1).weight == 1 + 3 * 8);
  CHECK(companion_weight(G, 3, 2, 1).weight == profile(build_companion_F(G, 3, 2, 1)).weight);
}

TEST_CASE("verdict json") {
  const auto j = nlohmann::json::parse(verdict_to_json(thm3_check(H, 3), "geta(9,0)/geta(6,1)"));
  CHECK(j["expr"] == "geta(9,0)/geta(6,1)");
  CHECK(j["criterion"] == "thm3");
  CHECK(j["bound_sq"]["num"] == 54);
  CHECK(j["positivity"]["den"] == 9);
  CHECK(j["satisfied"] == true);
  CHECK(nlohmann::json::parse(verdict_to_json(thm1_check(G, 3), "G"))["positivity"].is_null());
}
