#include "etalab/qseries.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "etalab/error.hpp"

namespace etalab {

namespace {

using Residues = QSeries::ResidueCoeffs;
using Exacts = QSeries::ExactCoeffs;

__extension__ using u128 = unsigned __int128;

// Residue arithmetic for M < 2^63: a + b never wraps, and min(r, r - M)
// selects the reduced value without a branch.
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t r = a + b;
  return std::min(r, r - m);
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) { return add_mod(a, m - b, m); }
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}
inline std::uint64_t to_residue(std::int64_t v, std::uint64_t m) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % m;
  const std::uint64_t r = (static_cast<std::uint64_t>(-(v + 1)) + 1) % m;  // |v| without overflow
  return r == 0 ? 0 : m - r;
}
static_assert(sizeof(unsigned long) == 8, "mpz <-> uint64 conversions assume 64-bit unsigned long");
inline BigInt from_u64(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), from_u64(a).get_mpz_t(), from_u64(m).get_mpz_t()) == 0)
    throw Error(Errc::not_invertible, "constant term " + std::to_string(a) + " is not invertible mod " +
                                          std::to_string(m));
  return inv.get_ui();
}

void require_same_ring(const QSeries& a, const QSeries& b) {
  if (!(a.ring() == b.ring()))
    throw Error(Errc::ring_mismatch, "ring mismatch: " + to_string(a.ring()) + " vs " + to_string(b.ring()));
}

// (exponent, coefficient) pairs with nonzero coefficient, exact or residue.
template <class Coeff>
std::vector<std::pair<std::size_t, Coeff>> nonzero_terms(const std::vector<Coeff>& c, std::size_t limit) {
  std::vector<std::pair<std::size_t, Coeff>> out;
  for (std::size_t n = 0; n <= limit && n < c.size(); ++n)
    if (c[n] != 0) out.emplace_back(n, c[n]);
  return out;
}

// ---- sparse +-1 kernels --------------------------------------------------

// Splits the non-constant terms of a unit-coefficient sparse factor by sign.
struct SignedSupport {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  bool unit_coefficients = true;
};

SignedSupport split_support(const SparseFactor& f) {
  SignedSupport s;
  for (std::size_t i = 1; i < f.terms.size(); ++i) {
    const auto [e, c] = f.terms[i];
    if (c == 1)
      s.plus.push_back(e);
    else if (c == -1)
      s.minus.push_back(e);
    else if (c != 0)
      s.unit_coefficients = false;
  }
  return s;
}

// Small signed coefficients split by sign; products with residues (< 2^63)
// stay below 2^95, so a u128 sum of up to 2^32 of them cannot wrap.
struct WeightedSupport {
  std::vector<std::pair<std::size_t, std::uint64_t>> plus;
  std::vector<std::pair<std::size_t, std::uint64_t>> minus;
  bool small = true;
};

WeightedSupport split_weighted(const SparseFactor& f) {
  WeightedSupport s;
  constexpr std::int64_t kLimit = std::int64_t{1} << 32;
  if (f.terms.size() > static_cast<std::size_t>(kLimit)) s.small = false;
  for (std::size_t i = 1; i < f.terms.size(); ++i) {
    const auto [e, c] = f.terms[i];
    if (c >= kLimit || c <= -kLimit) s.small = false;
    if (c > 0)
      s.plus.emplace_back(e, static_cast<std::uint64_t>(c));
    else if (c < 0)
      s.minus.emplace_back(e, static_cast<std::uint64_t>(-c));
  }
  return s;
}

// Terms with e <= n form a prefix of each (sorted) list.
template <class Acc>
Acc weighted_sum(const std::vector<std::pair<std::size_t, std::uint64_t>>& terms, const std::uint64_t* a,
                 std::size_t n) {
  Acc acc = 0;
  for (const auto& [e, c] : terms) {
    if (e > n) break;
    acc += static_cast<Acc>(c) * a[n - e];
  }
  return acc;
}

// Whether m * max|c| * count fits in 64 bits, so Acc = uint64_t is safe.
bool fits_u64(const WeightedSupport& s, std::uint64_t m) {
  std::uint64_t cmax = 0;
  for (const auto& [e, c] : s.plus) cmax = std::max(cmax, c);
  for (const auto& [e, c] : s.minus) cmax = std::max(cmax, c);
  const u128 bound = static_cast<u128>(m) * cmax * std::max(s.plus.size(), s.minus.size());
  return bound < (static_cast<u128>(1) << 64);
}

// a[n] <- c0 a[n] + sum c_k a[n - e_k], descending so the sources are untouched.
template <class Acc>
void mul_weighted_residue(Residues& a, const WeightedSupport& s, std::uint64_t c0, std::uint64_t m) {
  for (std::size_t n = a.size(); n-- > 0;) {
    const Acc up = weighted_sum<Acc>(s.plus, a.data(), n);
    const Acc down = weighted_sum<Acc>(s.minus, a.data(), n);
    const std::uint64_t head = c0 == 1 ? a[n] : mul_mod(a[n], c0, m);
    a[n] = add_mod(head, sub_mod(static_cast<std::uint64_t>(up % m), static_cast<std::uint64_t>(down % m), m), m);
  }
}

// Solves c0 q[n] + sum c_k q[n - e_k] = a[n] in place.
template <class Acc>
void div_weighted_residue(Residues& a, const WeightedSupport& s, std::uint64_t c0_inv, std::uint64_t m) {
  for (std::size_t n = 0; n < a.size(); ++n) {
    const Acc up = weighted_sum<Acc>(s.minus, a.data(), n);
    const Acc down = weighted_sum<Acc>(s.plus, a.data(), n);
    const std::uint64_t v =
        add_mod(a[n], sub_mod(static_cast<std::uint64_t>(up % m), static_cast<std::uint64_t>(down % m), m), m);
    a[n] = c0_inv == 1 ? v : mul_mod(v, c0_inv, m);
  }
}

void mul_sparse_residue(Residues& a, const SparseFactor& f, std::uint64_t m) {
  const std::uint64_t c0 = to_residue(f.terms.front().second, m);
  if (!split_support(f).unit_coefficients) {
    const WeightedSupport w = split_weighted(f);
    if (w.small) {
      fits_u64(w, m) ? mul_weighted_residue<std::uint64_t>(a, w, c0, m) : mul_weighted_residue<u128>(a, w, c0, m);
      return;
    }
  }
  const std::size_t T = a.size() - 1;
  const Residues src = a;
  if (c0 != 1)
    for (auto& v : a) v = mul_mod(v, c0, m);
  for (std::size_t i = 1; i < f.terms.size(); ++i) {
    const auto [e, c] = f.terms[i];
    if (e > T) break;
    std::uint64_t* out = a.data() + e;
    const std::uint64_t* in = src.data();
    const std::size_t len = T + 1 - e;
    if (c == 1) {
      for (std::size_t n = 0; n < len; ++n) out[n] = add_mod(out[n], in[n], m);
    } else if (c == -1) {
      for (std::size_t n = 0; n < len; ++n) out[n] = sub_mod(out[n], in[n], m);
    } else {
      const std::uint64_t cr = to_residue(c, m);
      for (std::size_t n = 0; n < len; ++n) out[n] = add_mod(out[n], mul_mod(cr, in[n], m), m);
    }
  }
}

template <class Acc>
void div_unit_support_residue(Residues& a, const SignedSupport& s, std::uint64_t c0_inv, std::uint64_t m) {
  // q[n] = c0^{-1} (a[n] - sum_plus q[n-e] + sum_minus q[n-e])
  const std::size_t T = a.size() - 1;
  std::uint64_t* q = a.data();
  for (std::size_t n = 0; n <= T; ++n) {
    Acc up = q[n];
    Acc down = 0;
    for (std::size_t e : s.minus) {
      if (e > n) break;
      up += q[n - e];
    }
    for (std::size_t e : s.plus) {
      if (e > n) break;
      down += q[n - e];
    }
    std::uint64_t v = sub_mod(static_cast<std::uint64_t>(up % m), static_cast<std::uint64_t>(down % m), m);
    q[n] = c0_inv == 1 ? v : mul_mod(v, c0_inv, m);
  }
}

void div_sparse_residue(Residues& a, const SparseFactor& f, std::uint64_t m) {
  const std::uint64_t c0_inv = inverse_mod(to_residue(f.terms.front().second, m), m);
  const SignedSupport s = split_support(f);
  if (s.unit_coefficients) {
    // Values stay below 2^32 when m does, so a 64-bit accumulator cannot wrap.
    if (m < (std::uint64_t{1} << 32))
      div_unit_support_residue<std::uint64_t>(a, s, c0_inv, m);
    else
      div_unit_support_residue<u128>(a, s, c0_inv, m);
    return;
  }
  if (const WeightedSupport w = split_weighted(f); w.small) {
    fits_u64(w, m) ? div_weighted_residue<std::uint64_t>(a, w, c0_inv, m)
                   : div_weighted_residue<u128>(a, w, c0_inv, m);
    return;
  }
  std::vector<std::pair<std::size_t, std::uint64_t>> terms;
  for (std::size_t i = 1; i < f.terms.size(); ++i)
    if (f.terms[i].second != 0) terms.emplace_back(f.terms[i].first, to_residue(f.terms[i].second, m));
  const std::size_t T = a.size() - 1;
  for (std::size_t n = 0; n <= T; ++n) {
    std::uint64_t acc = a[n];
    for (const auto& [e, c] : terms) {
      if (e > n) break;
      acc = sub_mod(acc, mul_mod(c, a[n - e], m), m);
    }
    a[n] = mul_mod(acc, c0_inv, m);
  }
}

void mul_sparse_exact(Exacts& a, const SparseFactor& f) {
  const std::size_t T = a.size() - 1;
  const Exacts src = a;
  const std::int64_t c0 = f.terms.front().second;
  if (c0 != 1)
    for (auto& v : a) v *= static_cast<long>(c0);
  for (std::size_t i = 1; i < f.terms.size(); ++i) {
    const auto [e, c] = f.terms[i];
    if (e > T) break;
    for (std::size_t n = e; n <= T; ++n) {
      mpz_ptr out = a[n].get_mpz_t();
      mpz_srcptr in = src[n - e].get_mpz_t();
      if (c == 1)
        mpz_add(out, out, in);
      else if (c == -1)
        mpz_sub(out, out, in);
      else if (c > 0)
        mpz_addmul_ui(out, in, static_cast<unsigned long>(c));
      else
        mpz_submul_ui(out, in, static_cast<unsigned long>(-c));
    }
  }
}

void div_sparse_exact(Exacts& a, const SparseFactor& f) {
  const std::int64_t c0 = f.terms.front().second;
  if (c0 != 1 && c0 != -1)
    throw Error(Errc::not_invertible, "constant term " + std::to_string(c0) + " is not a unit of Z");
  const std::size_t T = a.size() - 1;
  BigInt acc;
  for (std::size_t n = 0; n <= T; ++n) {
    acc = a[n];
    for (std::size_t i = 1; i < f.terms.size(); ++i) {
      const auto [e, c] = f.terms[i];
      if (e > n) break;
      mpz_srcptr prev = a[n - e].get_mpz_t();
      if (c == 1)
        mpz_sub(acc.get_mpz_t(), acc.get_mpz_t(), prev);
      else if (c == -1)
        mpz_add(acc.get_mpz_t(), acc.get_mpz_t(), prev);
      else if (c > 0)
        mpz_submul_ui(acc.get_mpz_t(), prev, static_cast<unsigned long>(c));
      else
        mpz_addmul_ui(acc.get_mpz_t(), prev, static_cast<unsigned long>(-c));
    }
    if (c0 == -1) mpz_neg(acc.get_mpz_t(), acc.get_mpz_t());
    a[n] = acc;
  }
}

// ---- two-term factors (1 - q^n) -------------------------------------------

template <class Vec, class Sub>
void times_one_minus(Vec& c, std::size_t n, Sub sub) {
  for (std::size_t k = c.size() - 1; k >= n; --k) {
    sub(c[k], c[k - n]);
    if (k == n) break;
  }
}

template <class Vec, class Add>
void over_one_minus(Vec& c, std::size_t n, Add add) {
  for (std::size_t k = n; k < c.size(); ++k) add(c[k], c[k - n]);
}

}  // namespace

namespace detail {
struct QSeriesAccess {
  static QSeries::ExactCoeffs& exact(QSeries& s) { return std::get<QSeries::ExactCoeffs>(s.coeffs_); }
  static QSeries::ResidueCoeffs& residues(QSeries& s) { return std::get<QSeries::ResidueCoeffs>(s.coeffs_); }
};
}  // namespace detail

using detail::QSeriesAccess;

// ---- CoefficientRing / SparseFactor ---------------------------------------

CoefficientRing CoefficientRing::residue(std::uint64_t m) {
  if (m < 2 || m >= (std::uint64_t{1} << 63))
    throw Error(Errc::invalid_parameter, "modulus must satisfy 2 <= M < 2^63, got " + std::to_string(m));
  CoefficientRing r;
  r.kind_ = Kind::residue_mod;
  r.modulus_ = m;
  return r;
}

std::string to_string(const CoefficientRing& ring) {
  return ring.is_exact() ? std::string("ZZ") : "ZZ/" + std::to_string(ring.modulus());
}

void SparseFactor::validate() const {
  if (terms.empty() || terms.front().first != 0 || (terms.front().second != 1 && terms.front().second != -1))
    throw Error(Errc::invalid_parameter, "sparse factor needs a +-1 constant term");
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].first <= terms[i - 1].first)
      throw Error(Errc::invalid_parameter, "sparse factor exponents must strictly increase");
}

SparseFactor SparseFactor::pentagonal(std::int64_t delta, std::size_t limit) {
  if (delta < 1) throw Error(Errc::invalid_parameter, "eta dilation must be >= 1");
  SparseFactor f;
  f.terms.emplace_back(0, 1);
  const auto d = static_cast<u128>(delta);
  for (std::uint64_t k = 1;; ++k) {
    // generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2, sign (-1)^k
    const u128 lo = d * (k * (3 * k - 1) / 2);
    if (lo > limit) break;
    const u128 hi = d * (k * (3 * k + 1) / 2);
    const std::int64_t sign = (k % 2 == 1) ? -1 : 1;
    f.terms.emplace_back(static_cast<std::size_t>(lo), sign);
    if (hi <= limit) f.terms.emplace_back(static_cast<std::size_t>(hi), sign);
  }
  return f;
}

SparseFactor SparseFactor::jacobi_cube(std::int64_t delta, std::size_t limit) {
  if (delta < 1) throw Error(Errc::invalid_parameter, "eta dilation must be >= 1");
  SparseFactor f;
  const auto d = static_cast<u128>(delta);
  // prod (1 - q^n)^3 = sum (-1)^k (2k+1) q^(k(k+1)/2)
  for (std::uint64_t k = 0;; ++k) {
    const u128 e = d * (k * (k + 1) / 2);
    if (e > limit) break;
    const auto c = static_cast<std::int64_t>(2 * k + 1);
    f.terms.emplace_back(static_cast<std::size_t>(e), k % 2 == 1 ? -c : c);
  }
  return f;
}

// ---- QSeries --------------------------------------------------------------

QSeries::QSeries(CoefficientRing ring, std::size_t truncation, Rational prefix)
    : ring_(ring), prefix_(std::move(prefix)) {
  if (ring.is_exact())
    coeffs_ = ExactCoeffs(truncation + 1);
  else
    coeffs_ = ResidueCoeffs(truncation + 1, 0);
}

QSeries::QSeries(ExactCoeffs coeffs, Rational prefix)
    : ring_(CoefficientRing::exact()), prefix_(std::move(prefix)), coeffs_(std::move(coeffs)) {
  if (std::get<ExactCoeffs>(coeffs_).empty()) throw Error(Errc::invalid_parameter, "series needs T >= 0");
}

QSeries::QSeries(CoefficientRing ring, ResidueCoeffs coeffs, Rational prefix)
    : ring_(ring), prefix_(std::move(prefix)), coeffs_(std::move(coeffs)) {
  if (ring.is_exact()) throw Error(Errc::ring_mismatch, "residue coefficients need a residue ring");
  const auto& c = std::get<ResidueCoeffs>(coeffs_);
  if (c.empty()) throw Error(Errc::invalid_parameter, "series needs T >= 0");
  for (auto v : c)
    if (v >= ring.modulus()) throw Error(Errc::invalid_parameter, "residue out of range");
}

QSeries QSeries::one(CoefficientRing ring, std::size_t truncation) {
  QSeries s(ring, truncation);
  std::visit([](auto& c) { c[0] = 1; }, s.coeffs_);
  return s;
}

QSeries QSeries::from_integers(CoefficientRing ring, std::span<const std::int64_t> coeffs, Rational prefix) {
  if (coeffs.empty()) throw Error(Errc::invalid_parameter, "series needs T >= 0");
  if (ring.is_exact()) {
    ExactCoeffs c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.emplace_back(static_cast<long>(v));
    return QSeries(std::move(c), std::move(prefix));
  }
  ResidueCoeffs c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(to_residue(v, ring.modulus()));
  return QSeries(ring, std::move(c), std::move(prefix));
}

QSeries QSeries::from_sparse(CoefficientRing ring, const SparseFactor& factor, std::size_t truncation,
                             Rational prefix) {
  QSeries s(ring, truncation, std::move(prefix));
  for (const auto& [e, c] : factor.terms) {
    if (e > truncation) break;
    if (ring.is_exact())
      std::get<ExactCoeffs>(s.coeffs_)[e] = static_cast<long>(c);
    else
      std::get<ResidueCoeffs>(s.coeffs_)[e] = to_residue(c, ring.modulus());
  }
  return s;
}

std::size_t QSeries::size() const {
  return std::visit([](const auto& c) { return c.size(); }, coeffs_);
}

BigInt QSeries::coefficient(std::size_t n) const {
  if (ring_.is_exact()) return std::get<ExactCoeffs>(coeffs_).at(n);
  return from_u64(std::get<ResidueCoeffs>(coeffs_).at(n));
}

bool QSeries::is_zero_at(std::size_t n) const {
  return std::visit([n](const auto& c) { return c.at(n) == 0; }, coeffs_);
}

std::size_t QSeries::nonzero_count() const {
  return std::visit(
      [](const auto& c) {
        return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](const auto& v) { return v != 0; }));
      },
      coeffs_);
}

const QSeries::ExactCoeffs& QSeries::exact() const {
  if (!ring_.is_exact()) throw Error(Errc::ring_mismatch, "series is over " + to_string(ring_));
  return std::get<ExactCoeffs>(coeffs_);
}

const QSeries::ResidueCoeffs& QSeries::residues() const {
  if (ring_.is_exact()) throw Error(Errc::ring_mismatch, "series is over ZZ");
  return std::get<ResidueCoeffs>(coeffs_);
}

QSeries QSeries::with_prefix(Rational prefix) const {
  QSeries s = *this;
  s.prefix_ = std::move(prefix);
  return s;
}

QSeries QSeries::truncated(std::size_t truncation) const {
  if (truncation > this->truncation())
    throw Error(Errc::invalid_parameter, "cannot extend a truncated series");
  QSeries s = *this;
  std::visit([truncation](auto& c) { c.resize(truncation + 1); }, s.coeffs_);
  return s;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.ring_ == b.ring_ && a.prefix_ == b.prefix_ && a.coeffs_ == b.coeffs_;
}

// ---- operations ------------------------------------------------------------

QSeries eta_series(std::int64_t delta, std::size_t truncation, CoefficientRing ring) {
  return QSeries::from_sparse(ring, SparseFactor::pentagonal(delta, truncation), truncation,
                              make_rational(delta, 24));
}

QSeries geta_series(std::int64_t delta, std::int64_t g, std::size_t truncation, CoefficientRing ring) {
  if (delta < 1) throw Error(Errc::invalid_parameter, "generalized eta needs delta >= 1");
  std::int64_t r = ((g % delta) + delta) % delta;
  if (r == 0)
    throw Error(Errc::invalid_parameter,
                "g = 0 (mod delta) is eta(delta tau)^2; expand it with eta_series instead");
  r = std::min(r, delta - r);
  QSeries s = QSeries::one(ring, truncation);
  mul_residue_class_product_inplace(s, delta, r, 1);
  return s.with_prefix(bernoulli_p2(make_rational(r, delta)) * make_rational(delta, 2));
}

void mul_inplace(QSeries& a, const SparseFactor& b) {
  b.validate();
  if (a.ring().is_exact()) {
    auto& c = QSeriesAccess::exact(a);
    mul_sparse_exact(c, b);
  } else {
    auto& c = QSeriesAccess::residues(a);
    mul_sparse_residue(c, b, a.ring().modulus());
  }
}

void div_inplace(QSeries& a, const SparseFactor& b) {
  b.validate();
  if (a.ring().is_exact()) {
    auto& c = QSeriesAccess::exact(a);
    div_sparse_exact(c, b);
  } else {
    auto& c = QSeriesAccess::residues(a);
    div_sparse_residue(c, b, a.ring().modulus());
  }
}

void mul_residue_class_product_inplace(QSeries& a, std::int64_t delta, std::int64_t g, std::int64_t exponent) {
  if (delta < 1) throw Error(Errc::invalid_parameter, "residue-class product needs delta >= 1");
  const std::size_t T = a.truncation();
  const std::int64_t g1 = ((g % delta) + delta) % delta;
  const std::int64_t g2 = (delta - g1) % delta;
  const std::int64_t reps = exponent < 0 ? -exponent : exponent;
  const std::uint64_t m = a.ring().modulus();
  // Each residue class contributes its own product, so a self-paired class
  // (2g = 0 mod delta) appears squared.
  for (std::int64_t cls : {g1, g2}) {
    for (std::size_t n = cls == 0 ? static_cast<std::size_t>(delta) : static_cast<std::size_t>(cls); n <= T;
         n += static_cast<std::size_t>(delta)) {
      for (std::int64_t rep = 0; rep < reps; ++rep) {
        if (a.ring().is_exact()) {
          auto& c = QSeriesAccess::exact(a);
          if (exponent > 0)
            times_one_minus(c, n, [](BigInt& x, const BigInt& y) { x -= y; });
          else
            over_one_minus(c, n, [](BigInt& x, const BigInt& y) { x += y; });
        } else {
          auto& c = QSeriesAccess::residues(a);
          if (exponent > 0)
            times_one_minus(c, n, [m](std::uint64_t& x, std::uint64_t y) { x = sub_mod(x, y, m); });
          else
            over_one_minus(c, n, [m](std::uint64_t& x, std::uint64_t y) { x = add_mod(x, y, m); });
        }
      }
    }
  }
}

QSeries add(const QSeries& a, const QSeries& b) {
  require_same_ring(a, b);
  if (a.prefix() != b.prefix()) throw Error(Errc::invalid_parameter, "cannot add series with different prefixes");
  const std::size_t T = std::min(a.truncation(), b.truncation());
  if (a.ring().is_exact()) {
    QSeries::ExactCoeffs c(T + 1);
    for (std::size_t n = 0; n <= T; ++n) c[n] = a.exact()[n] + b.exact()[n];
    return QSeries(std::move(c), a.prefix());
  }
  const std::uint64_t m = a.ring().modulus();
  QSeries::ResidueCoeffs c(T + 1);
  for (std::size_t n = 0; n <= T; ++n) c[n] = add_mod(a.residues()[n], b.residues()[n], m);
  return QSeries(a.ring(), std::move(c), a.prefix());
}

QSeries sub(const QSeries& a, const QSeries& b) {
  require_same_ring(a, b);
  if (a.prefix() != b.prefix())
    throw Error(Errc::invalid_parameter, "cannot subtract series with different prefixes");
  const std::size_t T = std::min(a.truncation(), b.truncation());
  if (a.ring().is_exact()) {
    QSeries::ExactCoeffs c(T + 1);
    for (std::size_t n = 0; n <= T; ++n) c[n] = a.exact()[n] - b.exact()[n];
    return QSeries(std::move(c), a.prefix());
  }
  const std::uint64_t m = a.ring().modulus();
  QSeries::ResidueCoeffs c(T + 1);
  for (std::size_t n = 0; n <= T; ++n) c[n] = sub_mod(a.residues()[n], b.residues()[n], m);
  return QSeries(a.ring(), std::move(c), a.prefix());
}

QSeries mul(const QSeries& a, const QSeries& b) {
  require_same_ring(a, b);
  const std::size_t T = std::min(a.truncation(), b.truncation());
  Rational prefix = a.prefix() + b.prefix();
  // Iterate over the sparser operand so sparse factors cost O(T * nonzeros).
  const bool a_sparser = a.nonzero_count() < b.nonzero_count();
  const QSeries& sparse = a_sparser ? a : b;
  const QSeries& dense = a_sparser ? b : a;
  if (a.ring().is_exact()) {
    QSeries::ExactCoeffs out(T + 1);
    for (const auto& [e, c] : nonzero_terms(sparse.exact(), T))
      for (std::size_t n = e; n <= T; ++n)
        mpz_addmul(out[n].get_mpz_t(), c.get_mpz_t(), dense.exact()[n - e].get_mpz_t());
    return QSeries(std::move(out), std::move(prefix));
  }
  const std::uint64_t m = a.ring().modulus();
  QSeries::ResidueCoeffs out(T + 1, 0);
  const auto& d = dense.residues();
  for (const auto& [e, c] : nonzero_terms(sparse.residues(), T)) {
    if (c == 1) {
      for (std::size_t n = e; n <= T; ++n) out[n] = add_mod(out[n], d[n - e], m);
    } else if (c == m - 1) {
      for (std::size_t n = e; n <= T; ++n) out[n] = sub_mod(out[n], d[n - e], m);
    } else {
      for (std::size_t n = e; n <= T; ++n) out[n] = add_mod(out[n], mul_mod(c, d[n - e], m), m);
    }
  }
  return QSeries(a.ring(), std::move(out), std::move(prefix));
}

QSeries mul(const QSeries& a, const SparseFactor& b) {
  QSeries out = a;
  mul_inplace(out, b);
  return out;
}

QSeries div_unit(const QSeries& a, const QSeries& b) {
  require_same_ring(a, b);
  const std::size_t T = std::min(a.truncation(), b.truncation());
  Rational prefix = a.prefix() - b.prefix();
  if (a.ring().is_exact()) {
    const auto terms = nonzero_terms(b.exact(), T);
    if (terms.empty() || terms.front().first != 0 || (terms.front().second != 1 && terms.front().second != -1))
      throw Error(Errc::not_invertible, "divisor constant term is not +-1");
    const bool negate = terms.front().second == -1;
    QSeries::ExactCoeffs q(a.exact().begin(), a.exact().begin() + static_cast<std::ptrdiff_t>(T + 1));
    for (std::size_t n = 0; n <= T; ++n) {
      for (std::size_t i = 1; i < terms.size() && terms[i].first <= n; ++i)
        mpz_submul(q[n].get_mpz_t(), terms[i].second.get_mpz_t(), q[n - terms[i].first].get_mpz_t());
      if (negate) mpz_neg(q[n].get_mpz_t(), q[n].get_mpz_t());
    }
    return QSeries(std::move(q), std::move(prefix));
  }
  const std::uint64_t m = a.ring().modulus();
  const auto terms = nonzero_terms(b.residues(), T);
  if (terms.empty() || terms.front().first != 0)
    throw Error(Errc::not_invertible, "divisor constant term is zero");
  const std::uint64_t c0_inv = inverse_mod(terms.front().second, m);
  QSeries::ResidueCoeffs q(a.residues().begin(), a.residues().begin() + static_cast<std::ptrdiff_t>(T + 1));
  for (std::size_t n = 0; n <= T; ++n) {
    std::uint64_t acc = q[n];
    for (std::size_t i = 1; i < terms.size() && terms[i].first <= n; ++i)
      acc = sub_mod(acc, mul_mod(terms[i].second, q[n - terms[i].first], m), m);
    q[n] = mul_mod(acc, c0_inv, m);
  }
  return QSeries(a.ring(), std::move(q), std::move(prefix));
}

QSeries div_unit(const QSeries& a, const SparseFactor& b) {
  QSeries out = a;
  div_inplace(out, b);
  return out;
}

QSeries pow_int(const QSeries& a, std::int64_t e) {
  if (e < 0) {
    const QSeries p = pow_int(a, -e);
    return div_unit(QSeries::one(a.ring(), a.truncation()), p);
  }
  QSeries result = QSeries::one(a.ring(), a.truncation());
  QSeries base = a;
  std::uint64_t k = static_cast<std::uint64_t>(e);
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result.with_prefix(a.prefix() * Rational(static_cast<long>(e)));
}

QSeries dilate(const QSeries& a, std::int64_t m, std::optional<std::size_t> max_truncation) {
  if (m < 1) throw Error(Errc::invalid_parameter, "dilation factor must be >= 1");
  const auto mm = static_cast<std::size_t>(m);
  std::size_t T = a.truncation() * mm;
  if (max_truncation) T = std::min(T, *max_truncation);
  QSeries out(a.ring(), T, a.prefix() * Rational(static_cast<long>(m)));
  if (a.ring().is_exact()) {
    auto& c = QSeriesAccess::exact(out);
    for (std::size_t n = 0; n * mm <= T; ++n) c[n * mm] = a.exact()[n];
  } else {
    auto& c = QSeriesAccess::residues(out);
    for (std::size_t n = 0; n * mm <= T; ++n) c[n * mm] = a.residues()[n];
  }
  return out;
}

QSeries reduce_mod(const QSeries& a, std::uint64_t modulus) {
  const CoefficientRing target = CoefficientRing::residue(modulus);
  QSeries::ResidueCoeffs c(a.size());
  if (a.ring().is_exact()) {
    const BigInt mz = from_u64(modulus);
    BigInt r;
    for (std::size_t n = 0; n < c.size(); ++n) {
      mpz_fdiv_r(r.get_mpz_t(), a.exact()[n].get_mpz_t(), mz.get_mpz_t());
      c[n] = r.get_ui();
    }
  } else {
    if (a.ring().modulus() % modulus != 0)
      throw Error(Errc::ring_mismatch, "cannot reduce " + to_string(a.ring()) + " modulo " +
                                           std::to_string(modulus));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = a.residues()[n] % modulus;
  }
  return QSeries(target, std::move(c), a.prefix());
}

}  // namespace etalab
