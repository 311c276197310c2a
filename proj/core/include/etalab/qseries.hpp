#pragma once

// Truncated q-series over Z or Z/MZ with an exact rational exponent prefix.
//
// A QSeries represents q^prefix * (c[0] + c[1] q + ... + c[T] q^T) + O(q^(T+1)).
// Binary operations truncate to the smaller T of their inputs and add (or
// subtract) prefixes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "etalab/arith.hpp"

namespace etalab {

namespace detail {
struct QSeriesAccess;
}

class CoefficientRing {
 public:
  enum class Kind { exact_integer, residue_mod };

  static CoefficientRing exact() { return CoefficientRing(); }
  /// Residues modulo m, 2 <= m < 2^63.
  static CoefficientRing residue(std::uint64_t m);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact_integer; }
  /// 0 for the exact ring.
  std::uint64_t modulus() const { return modulus_; }

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  CoefficientRing() = default;
  Kind kind_ = Kind::exact_integer;
  std::uint64_t modulus_ = 0;
};

std::string to_string(const CoefficientRing& ring);

/// Sparse integer polynomial with a unit constant term, e.g. the pentagonal
/// support of prod (1 - q^(delta n)).
struct SparseFactor {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;

  /// Throws unless exponents strictly increase from 0 and the constant term is +-1.
  void validate() const;

  /// prod_{n>=1} (1 - q^(delta n)) through q^limit via the pentagonal number theorem.
  static SparseFactor pentagonal(std::int64_t delta, std::size_t limit);
  /// prod (1 - q^(delta n))^3 through q^limit (Jacobi).
  static SparseFactor jacobi_cube(std::int64_t delta, std::size_t limit);
};

class QSeries {
 public:
  using ExactCoeffs = std::vector<BigInt>;
  using ResidueCoeffs = std::vector<std::uint64_t>;

  /// The zero series through q^truncation.
  QSeries(CoefficientRing ring, std::size_t truncation, Rational prefix = 0);
  QSeries(ExactCoeffs coeffs, Rational prefix = 0);
  /// Entries must lie in [0, ring.modulus()).
  QSeries(CoefficientRing ring, ResidueCoeffs coeffs, Rational prefix = 0);

  static QSeries one(CoefficientRing ring, std::size_t truncation);
  /// Small-integer convenience constructor; values are reduced into the ring.
  static QSeries from_integers(CoefficientRing ring, std::span<const std::int64_t> coeffs,
                               Rational prefix = 0);
  static QSeries from_sparse(CoefficientRing ring, const SparseFactor& factor, std::size_t truncation,
                             Rational prefix = 0);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t truncation() const { return size() - 1; }
  std::size_t size() const;
  const Rational& prefix() const { return prefix_; }

  /// Exact value, or the least nonnegative residue.
  BigInt coefficient(std::size_t n) const;
  bool is_zero_at(std::size_t n) const;
  std::size_t nonzero_count() const;

  const ExactCoeffs& exact() const;
  const ResidueCoeffs& residues() const;

  QSeries with_prefix(Rational prefix) const;
  /// Drops terms above truncation (must not exceed the current one).
  QSeries truncated(std::size_t truncation) const;

  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  friend struct detail::QSeriesAccess;

  CoefficientRing ring_;
  Rational prefix_;
  std::variant<ExactCoeffs, ResidueCoeffs> coeffs_;
};

/// Integral part of eta(delta tau); prefix delta/24.
QSeries eta_series(std::int64_t delta, std::size_t truncation, CoefficientRing ring);

/// Integral part of the generalized eta function eta_{delta,g}; prefix P2(g/delta) delta/2.
/// g is reduced to its representative in (0, delta/2]; g = 0 mod delta is rejected.
QSeries geta_series(std::int64_t delta, std::int64_t g, std::size_t truncation, CoefficientRing ring);

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const SparseFactor& b);
/// Solves mul(q, b) = a; b's constant term must be a unit of the ring.
QSeries div_unit(const QSeries& a, const QSeries& b);
QSeries div_unit(const QSeries& a, const SparseFactor& b);
QSeries pow_int(const QSeries& a, std::int64_t e);
/// q -> q^m. The new truncation is m * T, or max_truncation when smaller.
QSeries dilate(const QSeries& a, std::int64_t m, std::optional<std::size_t> max_truncation = std::nullopt);
/// Coefficientwise reduction into Z/MZ. Accepts residue input when M divides its modulus.
QSeries reduce_mod(const QSeries& a, std::uint64_t modulus);

/// In-place variants used by the expansion kernels; `a` keeps its truncation.
void mul_inplace(QSeries& a, const SparseFactor& b);
void div_inplace(QSeries& a, const SparseFactor& b);
/// Multiplies by prod (1 - q^n) over n >= 1 with n = +-g (mod delta), |exponent| times
/// (dividing when exponent < 0). Both residue classes are used even when they coincide.
void mul_residue_class_product_inplace(QSeries& a, std::int64_t delta, std::int64_t g, std::int64_t exponent);

}  // namespace etalab
