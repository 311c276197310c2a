#include <doctest.h>

#include <json.hpp>

#include "etalab/error.hpp"
#include "etalab/etaexpr.hpp"
#include "etalab/modform.hpp"
#include "oracles.hpp"

using namespace etalab;

TEST_CASE("Gamma0 cusps") {
  CHECK(cusp_set_gamma0(1) == std::vector<Cusp0>{{1, 1}});
  const auto c4 = cusp_set_gamma0(4);
  CHECK(c4.size() == 3);
  for (std::int64_t N = 1; N <= 200; ++N) {
    const auto cusps = cusp_set_gamma0(N);
    CHECK(static_cast<std::int64_t>(cusps.size()) == gamma0_cusp_count(N));
    for (const auto& c : cusps) {
      CHECK(N % c.d == 0);
      CHECK(oracle::gcd(c.c, N) == 1);
    }
  }
  CHECK(gamma0_cusp_count(186624) == 864);
}

TEST_CASE("Gamma1 cusps") {
  const auto cusps = cusp_set_gamma1(12);
  for (const auto& c : cusps) {
    CHECK(12 % c.epsilon == 0);
    CHECK(oracle::gcd(c.mu, c.lambda) == 1);
    CHECK(oracle::gcd(c.lambda, 12) == 1);
    CHECK(oracle::gcd(c.mu, 12) == 1);
  }
  CHECK_THROWS_AS(cusp_set_gamma1(10007, 1000), Error);
}

TEST_CASE("Gamma0 modularity") {
  const NormalForm delta = parse_normal_form("eta(1)^24");
  const auto s = modularity_check(delta, 1, Group::gamma0);
  CHECK(s.satisfied);
  CHECK(s.conditions[1].value == 24);
  CHECK(s.conditions[2].value == 24);
  const NormalForm g = parse_normal_form("eta(18)^3/eta(1)");
  const auto sg = modularity_check(g, 18, Group::gamma0);
  CHECK_FALSE(sg.satisfied);
  CHECK(sg.conditions[1].value == 53);
  CHECK_FALSE(sg.conditions[1].satisfied);
  CHECK_THROWS_AS(modularity_check(g, 12, Group::gamma0), Error);
  CHECK_THROWS_AS(modularity_check(parse_normal_form("geta(6,1)"), 36, Group::gamma0), Error);
  const NormalForm F = parse_normal_form("eta(24)^26*eta(432)^3/eta(216)^3");
  CHECK(modularity_check(F, 186624, Group::gamma0).satisfied);
}

TEST_CASE("Gamma1 modularity") {
  const NormalForm h = dilate(parse_normal_form("geta(9,0)/geta(6,1)"), 24 * 18);
  CHECK(modularity_check(h, 576 * 18 * 18, Group::gamma1).satisfied);
  // ordinary forms enter as eta_{d,0}^{r/2}
  CHECK(modularity_check(parse_normal_form("eta(1)^24"), 1, Group::gamma1).satisfied);
}

TEST_CASE("character") {
  for (long d : {1, 5, 7, 11, 13, 25, -3})
    CHECK(kronecker_chi(parse_normal_form("eta(1)^24"), d) == 1);
  CHECK(kronecker_chi(parse_normal_form("eta(4)^6"), 5) == 1);
  CHECK(kronecker_chi(parse_normal_form("eta(4)^6"), 3) == kronecker(-4096, 3));
  CHECK(kronecker_chi(parse_normal_form("eta(1)^2*eta(11)^2"), 3) == kronecker(121, 3));
  for (long d = 1; d < 40; ++d) {
    const int chi = kronecker_chi(parse_normal_form("eta(2)^3*eta(3)/eta(6)^2"), d);
    if (chi != 0) CHECK(chi * chi == 1);
  }
  CHECK_THROWS_AS(kronecker_chi(parse_normal_form("eta(1)"), 5), Error);
}

TEST_CASE("Gamma0 orders") {
  const NormalForm delta = parse_normal_form("eta(1)^24");
  CHECK(order_at_cusp(delta, 1, Cusp0{1, 1}) == 1);
  const NormalForm F = parse_normal_form("eta(24)^26*eta(432)^3/eta(216)^3");
  const std::int64_t N = 186624;
  // at d = N the order is the prefix exponent
  CHECK(order_at_cusp(F, N, Cusp0{1, N}) == profile(F).prefix);
  CHECK(order_at_cusp(parse_normal_form("1"), 36, Cusp0{1, 6}) == 0);
  // depends on c only through d
  const NormalForm g = parse_normal_form("eta(2)^8*eta(4)^8");
  for (std::int64_t d : divisors(16)) {
    Rational first;
    bool seen = false;
    for (const auto& c : cusp_set_gamma0(16)) {
      if (c.d != d) continue;
      const Rational o = order_at_cusp(g, 16, c);
      if (seen) CHECK(o == first);
      first = o;
      seen = true;
    }
  }
  CHECK_THROWS_AS(order_at_cusp(delta, 4, Cusp0{1, 3}), Error);
  CHECK_THROWS_AS(order_at_cusp(delta, 4, Cusp0{2, 4}), Error);
}

TEST_CASE("Gamma1 orders") {
  const NormalForm h = parse_normal_form("geta(9,0)/geta(6,1)");
  const std::int64_t N = 576 * 18 * 18;
  // eps = N: (N/2) sum delta P2(g/delta) r / N, the prefix
  CHECK(order_at_cusp(h, N, Cusp1{1, 1, N}) == profile(h).prefix);
  // the undilated H is not holomorphic at 1/1
  CHECK(order_at_cusp(h, N, Cusp1{1, 1, 1}) < 0);
  CHECK(order_at_cusp(h, N, Cusp1{1, 1, 1}) == make_rational(N, 2) * (Rational(1, 54) - Rational(1, 36)));
  CHECK_THROWS_AS(order_at_cusp(h, N, Cusp1{2, 1, 1}), Error);
  // for ordinary forms the two formulas differ by the factor (d, N/d)
  const NormalForm F = parse_normal_form("eta(24)^26*eta(432)^3/eta(216)^3");
  for (std::int64_t d : divisors(N))
    CHECK(order_at_cusp(F, N, Cusp1{1, 1, d}) == order_at_cusp(F, N, Cusp0{1, d}) * oracle::gcd(d, N / d));
}

TEST_CASE("Ntilde clears every P2 denominator") {
  for (const char* text : {"geta(9,0)/geta(6,1)", "geta(10,3)*geta(4,2)^(1/2)/geta(15,7)", "eta(7)*geta(12,5)"}) {
    const NormalForm nf = parse_normal_form(text);
    const std::int64_t nt = profile(nf).n_tilde;
    for (const auto& f : nf.to_expr().factors)
      for (std::int64_t g = 0; g < 3 * f.base.delta; ++g)
        CHECK(is_multiple_of(bernoulli_p2(make_rational(g, f.base.delta)) * f.base.delta * nt, 2));
  }
}

TEST_CASE("holomorphy reports") {
  const auto delta = holomorphy_report(parse_normal_form("eta(1)^24"), 1, Group::gamma0);
  CHECK(delta.holomorphic);
  CHECK(delta.min_order == 1);
  CHECK(delta.weight == 12);

  const NormalForm g = parse_normal_form("eta(18)^3/eta(1)");
  CHECK_THROWS_AS(holomorphy_report(g, 186624, Group::gamma0), Error);
  const auto formal = holomorphy_report(g, 186624, Group::gamma0, false);
  CHECK_FALSE(formal.modularity.satisfied);
  CHECK_FALSE(formal.holomorphic);
  CHECK(std::get<Cusp0>(formal.orders[formal.witness].cusp).d == 1);

  const auto dil = dilated_holomorphy_report(g);
  CHECK(dil.level == 186624);
  CHECK_FALSE(dil.holomorphic);
  CHECK(dil.min_order < 0);

  const auto h = dilated_holomorphy_report(parse_normal_form("geta(9,0)/geta(6,1)"));
  CHECK(h.group == Group::gamma1);
  CHECK_FALSE(h.holomorphic);
  CHECK(h.representatives_may_repeat);

  for (const auto& co : dil.orders) CHECK(co.order >= dil.min_order);
}

TEST_CASE("report json") {
  const auto r = holomorphy_report(parse_normal_form("eta(1)^24"), 1, Group::gamma0);
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["level"] == 1);
  CHECK(j["group"] == "Gamma0");
  CHECK(j["holomorphic"] == true);
  CHECK(j["cusps"].size() == 1);
  CHECK(j["cusps"][0]["repr"] == "1/1");
  CHECK(j["cusps"][0]["order_num"] == 1);
  CHECK(j["cusps"][0]["order_den"] == 1);
  CHECK(j["min_order"]["num"] == 1);
}
