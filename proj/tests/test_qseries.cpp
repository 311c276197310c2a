#include <doctest.h>

#include <random>

#include "etalab/error.hpp"
#include "etalab/hooklen.hpp"
#include "etalab/qseries.hpp"
#include "oracles.hpp"

using namespace etalab;

namespace {

std::vector<std::int64_t> coeffs(const QSeries& s) {
  std::vector<std::int64_t> out;
  for (std::size_t n = 0; n < s.size(); ++n) out.push_back(s.coefficient(n).get_si());
  return out;
}

std::vector<std::int64_t> signed_coeffs(const QSeries& s) {
  std::vector<std::int64_t> out;
  for (std::size_t n = 0; n < s.size(); ++n) out.push_back(s.exact()[n].get_si());
  return out;
}

QSeries series(std::initializer_list<std::int64_t> c, CoefficientRing ring = CoefficientRing::exact()) {
  std::vector<std::int64_t> v(c);
  return QSeries::from_integers(ring, v);
}

QSeries random_series(std::mt19937_64& rng, std::size_t T, bool unit) {
  std::uniform_int_distribution<std::int64_t> dist(-1000, 1000);
  QSeries::ExactCoeffs c(T + 1);
  for (auto& x : c) x = static_cast<long>(dist(rng));
  if (unit) c[0] = (dist(rng) % 2 == 0) ? 1 : -1;
  return QSeries(std::move(c));
}

bool same(const oracle::Poly& a, const QSeries& s) {
  if (a.size() != s.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n)
    if (a[n] != s.exact()[n]) return false;
  return true;
}

}  // namespace

TEST_CASE("coefficient rings") {
  CHECK(to_string(CoefficientRing::exact()) == "ZZ");
  CHECK(to_string(CoefficientRing::residue(9)) == "ZZ/9");
  CHECK_THROWS_AS(CoefficientRing::residue(1), Error);
  CHECK_THROWS_AS(CoefficientRing::residue(std::uint64_t{1} << 63), Error);
  CHECK_NOTHROW(CoefficientRing::residue((std::uint64_t{1} << 63) - 1));
}

TEST_CASE("eta series") {
  CHECK(signed_coeffs(eta_series(1, 10, CoefficientRing::exact())) ==
        std::vector<std::int64_t>{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0});
  const QSeries e2 = eta_series(2, 10, CoefficientRing::exact());
  CHECK(signed_coeffs(e2) == std::vector<std::int64_t>{1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1});
  CHECK(e2.prefix() == make_rational(2, 24));
  const QSeries e0 = eta_series(1, 0, CoefficientRing::exact());
  CHECK(e0.size() == 1);
  CHECK(e0.prefix() == Rational(1, 24));
  CHECK(eta_series(1, 2000, CoefficientRing::exact()).nonzero_count() < 80);
}

TEST_CASE("pentagonal support matches the brute-force product") {
  for (std::size_t T : {0u, 1u, 7u, 100u, 2000u}) {
    CHECK(same(oracle::eta_product({{1, 1}}, T), eta_series(1, T, CoefficientRing::exact())));
    CHECK(same(oracle::eta_product({{7, 1}}, T), eta_series(7, T, CoefficientRing::exact())));
  }
}

TEST_CASE("generalized eta series") {
  const QSeries g51 = geta_series(5, 1, 6, CoefficientRing::exact());
  CHECK(signed_coeffs(g51) == std::vector<std::int64_t>{1, -1, 0, 0, -1, 1, -1});
  CHECK(g51.prefix() == Rational(1, 60));
  CHECK(signed_coeffs(geta_series(6, 3, 5, CoefficientRing::exact())) ==
        std::vector<std::int64_t>{1, 0, 0, -2, 0, 0});
  CHECK(signed_coeffs(geta_series(2, 1, 4, CoefficientRing::exact())) ==
        std::vector<std::int64_t>{1, -2, 1, -2, 4});
  CHECK(geta_series(5, 4, 30, CoefficientRing::exact()) == geta_series(5, 1, 30, CoefficientRing::exact()));
  CHECK(geta_series(5, 6, 30, CoefficientRing::exact()) == geta_series(5, 1, 30, CoefficientRing::exact()));
  CHECK_THROWS_AS(geta_series(5, 0, 10, CoefficientRing::exact()), Error);
  CHECK_THROWS_AS(geta_series(5, 10, 10, CoefficientRing::exact()), Error);
  for (std::int64_t delta : {3, 7, 12}) {
    for (std::int64_t g = 1; 2 * g <= delta; ++g) {
      oracle::Poly want = oracle::one(120);
      oracle::residue_class_product(want, delta, g, 1);
      CHECK(same(want, geta_series(delta, g, 120, CoefficientRing::exact())));
    }
  }
}

TEST_CASE("zero-class generalized eta is eta squared") {
  for (std::int64_t delta : {1, 2, 3, 5, 9}) {
    const QSeries sq = pow_int(eta_series(delta, 500, CoefficientRing::exact()), 2);
    oracle::Poly want = oracle::one(500);
    oracle::residue_class_product(want, delta, 0, 1);
    CHECK(same(want, sq));
    CHECK(sq.prefix() == make_rational(delta, 12));
    CHECK(sq.prefix() == bernoulli_p2(0) * make_rational(delta, 2));
  }
}

TEST_CASE("multiplication") {
  const QSeries a = series({1, -1, 0});
  const QSeries b = series({1, 1, 0});
  CHECK(signed_coeffs(mul(a, b)) == std::vector<std::int64_t>{1, 0, -1});
  const QSeries e = eta_series(1, 20, CoefficientRing::exact());
  CHECK(mul(e, e).prefix() == make_rational(2, 24));
  CHECK(mul(e, div_unit(QSeries::one(CoefficientRing::exact(), 20), e)) == QSeries::one(CoefficientRing::exact(), 20));
  CHECK(mul(series({1, 2, 3}), series({1, 1})).truncation() == 1);
  CHECK_THROWS_AS(mul(series({1, 2}), series({1, 2}, CoefficientRing::residue(5))), Error);
  const SparseFactor f = SparseFactor::pentagonal(1, 30);
  CHECK(mul(QSeries::one(CoefficientRing::exact(), 30), f) == eta_series(1, 30, CoefficientRing::exact()).with_prefix(0));
}

TEST_CASE("division by a unit") {
  const QSeries p = div_unit(QSeries::one(CoefficientRing::exact(), 6), eta_series(1, 6, CoefficientRing::exact()));
  CHECK(signed_coeffs(p) == std::vector<std::int64_t>{1, 1, 2, 3, 5, 7, 11});
  CHECK(p.coefficient(4) == 5);
  CHECK(p.prefix() == Rational(-1, 24));
  const QSeries a = series({-1, 1, 4, 1, 5});
  CHECK(div_unit(a, a) == QSeries::one(CoefficientRing::exact(), 4).with_prefix(0));
  CHECK(signed_coeffs(div_unit(QSeries::one(CoefficientRing::exact(), 5), series({1, -1, 0, 0, 0, 0}))) ==
        std::vector<std::int64_t>{1, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(div_unit(series({1, 1}), series({2, 1})), Error);
  CHECK_THROWS_AS(div_unit(series({1, 1}, CoefficientRing::residue(6)), series({2, 1}, CoefficientRing::residue(6))),
                  Error);
  // 2 is a unit mod 5
  const QSeries r = div_unit(series({1, 0, 0}, CoefficientRing::residue(5)), series({2, 1, 0}, CoefficientRing::residue(5)));
  CHECK(mul(r, series({2, 1, 0}, CoefficientRing::residue(5))) == series({1, 0, 0}, CoefficientRing::residue(5)));
}

TEST_CASE("partition numbers against the oracles") {
  const QSeries p = div_unit(QSeries::one(CoefficientRing::exact(), 60), eta_series(1, 60, CoefficientRing::exact()));
  const auto want = oracle::partition_counts(60);
  for (std::size_t n = 0; n <= 60; ++n) {
    CHECK(p.coefficient(n) == want[n]);
    if (n <= 40) CHECK(p.coefficient(n) == static_cast<long>(partitions_of(static_cast<std::int64_t>(n)).size()));
  }
}

TEST_CASE("powers") {
  const QSeries e = eta_series(1, 4, CoefficientRing::exact());
  CHECK(signed_coeffs(pow_int(e, 24)) == std::vector<std::int64_t>{1, -24, 252, -1472, 4830});
  CHECK(same(oracle::eta_product({{1, 24}}, 4), pow_int(e, 24)));
  CHECK(pow_int(e, 24).prefix() == 1);
  CHECK(pow_int(e, 0) == QSeries::one(CoefficientRing::exact(), 4));
  CHECK(pow_int(e, 1) == e);
  CHECK(pow_int(e, -3) == div_unit(QSeries::one(CoefficientRing::exact(), 4).with_prefix(0), pow_int(e, 3)));
  CHECK_THROWS_AS(pow_int(series({2, 1}), -1), Error);
}

TEST_CASE("dilation and reduction") {
  CHECK(signed_coeffs(dilate(series({1, -1}), 3)) == std::vector<std::int64_t>{1, 0, 0, -1});
  CHECK(dilate(eta_series(1, 50, CoefficientRing::exact()), 7) == eta_series(7, 350, CoefficientRing::exact()));
  const QSeries a = series({1, 2, 3});
  CHECK(dilate(a, 1) == a);
  CHECK(dilate(a, 5, 7).truncation() == 7);
  const QSeries p = div_unit(QSeries::one(CoefficientRing::exact(), 20), eta_series(1, 20, CoefficientRing::exact()));
  const QSeries p5 = reduce_mod(p, 5);
  CHECK(p5.residues()[4] == 0);
  CHECK(p5.residues()[9] == 0);
  CHECK(p5.residues()[14] == 0);
  CHECK(p5.prefix() == p.prefix());
  CHECK(coeffs(reduce_mod(series({1, -24}), 2)) == std::vector<std::int64_t>{1, 0});
  CHECK(reduce_mod(reduce_mod(p, 25), 5) == p5);
  CHECK_THROWS_AS(reduce_mod(reduce_mod(p, 25), 3), Error);
}

TEST_CASE("addition requires matching prefixes") {
  const QSeries a = series({1, 2, 3});
  CHECK(signed_coeffs(add(a, a)) == std::vector<std::int64_t>{2, 4, 6});
  CHECK(sub(a, a).nonzero_count() == 0);
  CHECK_THROWS_AS(add(a, a.with_prefix(1)), Error);
}

TEST_CASE("sparse factor validation") {
  SparseFactor f;
  f.terms = {{0, 2}, {1, 1}};
  CHECK_THROWS_AS(f.validate(), Error);
  f.terms = {{0, 1}, {3, 1}, {2, 1}};
  CHECK_THROWS_AS(f.validate(), Error);
  CHECK_NOTHROW(SparseFactor::pentagonal(3, 100).validate());
}

TEST_CASE("residue constructor validates entries") {
  CHECK_THROWS_AS(QSeries(CoefficientRing::residue(5), QSeries::ResidueCoeffs{1, 5}), Error);
  CHECK_THROWS_AS(QSeries(QSeries::ExactCoeffs{}), Error);
  CHECK(coeffs(series({-1, -7}, CoefficientRing::residue(5))) == std::vector<std::int64_t>{4, 3});
}

TEST_CASE("large moduli agree with exact arithmetic") {
  const std::uint64_t M = (std::uint64_t{1} << 63) - 25;
  std::mt19937_64 rng(7);
  const QSeries a = random_series(rng, 200, true);
  const QSeries b = random_series(rng, 200, true);
  CHECK(reduce_mod(mul(a, b), M) == mul(reduce_mod(a, M), reduce_mod(b, M)));
  CHECK(reduce_mod(div_unit(a, b), M) == div_unit(reduce_mod(a, M), reduce_mod(b, M)));
  QSeries x = reduce_mod(a, M);
  div_inplace(x, SparseFactor::pentagonal(1, 200));
  QSeries y = a;
  div_inplace(y, SparseFactor::pentagonal(1, 200));
  CHECK(x == reduce_mod(y, M));
}

TEST_CASE("residue-class products in place") {
  for (std::uint64_t M : {0ull, 7ull, 1000003ull}) {
    const CoefficientRing ring = M ? CoefficientRing::residue(M) : CoefficientRing::exact();
    QSeries s = QSeries::one(ring, 150);
    mul_residue_class_product_inplace(s, 6, 1, -1);
    oracle::Poly want = oracle::one(150);
    oracle::residue_class_product(want, 6, 1, -1);
    const QSeries w = M ? reduce_mod(QSeries(want), M) : QSeries(want);
    CHECK(s == w);
    mul_residue_class_product_inplace(s, 6, 1, 1);
    CHECK(s == QSeries::one(ring, 150));
  }
}

TEST_CASE("Jacobi cube factor") {
  const std::size_t T = 400;
  const auto ref = oracle::eta_product({{2, 3}}, T);
  const QSeries c = QSeries::from_sparse(CoefficientRing::exact(), SparseFactor::jacobi_cube(2, T), T);
  for (std::size_t n = 0; n <= T; ++n) CHECK(c.coefficient(n) == ref[n]);

  const auto inv = oracle::eta_product({{1, -7}, {3, 4}}, T);
  for (std::uint64_t M : {2ull, 9ull, 1'000'000'007ull, 9'223'372'036'854'775'783ull}) {
    const auto ring = CoefficientRing::residue(M);
    QSeries s = QSeries::one(ring, T);
    div_inplace(s, SparseFactor::jacobi_cube(1, T));
    div_inplace(s, SparseFactor::jacobi_cube(1, T));
    div_inplace(s, SparseFactor::pentagonal(1, T));
    mul_inplace(s, SparseFactor::jacobi_cube(3, T));
    mul_inplace(s, SparseFactor::pentagonal(3, T));
    for (std::size_t n = 0; n <= T; ++n) {
      mpz_class r = inv[n] % static_cast<unsigned long>(M);
      if (r < 0) r += static_cast<unsigned long>(M);
      REQUIRE(s.coefficient(n) == r);
    }
  }
}
