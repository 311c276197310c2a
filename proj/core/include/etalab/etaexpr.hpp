#pragma once

// Eta-quotient expressions: parsing, normalization into the ordinary and
// generalized (generic / half-class / zero-class) factor lists, derived
// invariants, and q-expansion.
//
// Grammar (whitespace insignificant):
//   expr     := term (("*" | "/") term)*
//   term     := base ("^" exponent)?
//   base     := "eta" "(" INT ")" | "geta" "(" INT "," INT ")" | "1"
//   exponent := INT | "(" INT "/" "2" ")" | "-" exponent

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etalab/arith.hpp"
#include "etalab/qseries.hpp"

namespace etalab {

/// eta(delta tau) when !generalized, otherwise eta_{delta,g}(tau).
struct EtaBase {
  std::int64_t delta = 1;
  std::int64_t g = 0;
  bool generalized = false;

  static EtaBase ordinary(std::int64_t delta) { return {delta, 0, false}; }
  static EtaBase general(std::int64_t delta, std::int64_t g) { return {delta, g, true}; }

  friend bool operator==(const EtaBase&, const EtaBase&) = default;
  friend auto operator<=>(const EtaBase&, const EtaBase&) = default;
};

struct EtaFactor {
  EtaBase base;
  HalfInteger exponent;

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// A raw product of eta factors, as written.
struct EtaExpr {
  std::vector<EtaFactor> factors;

  EtaExpr& times(EtaBase base, HalfInteger exponent);
  friend EtaExpr operator*(const EtaExpr& a, const EtaExpr& b);
  friend bool operator==(const EtaExpr&, const EtaExpr&) = default;
};

/// eta(delta tau)^exponent, exponent > 0.
struct OrdinaryTerm {
  std::int64_t delta;
  std::int64_t exponent;
  friend bool operator==(const OrdinaryTerm&, const OrdinaryTerm&) = default;
};

/// eta_{delta,g}^exponent, exponent > 0.
struct GeneralizedTerm {
  std::int64_t delta;
  std::int64_t g;
  HalfInteger exponent;
  friend bool operator==(const GeneralizedTerm&, const GeneralizedTerm&) = default;
};

/// Canonical eta-quotient: every list sorted by (delta, g), exponents
/// positive, sign carried by numerator/denominator placement.
struct NormalForm {
  std::vector<OrdinaryTerm> numerator;
  std::vector<OrdinaryTerm> denominator;
  // 0 < g < delta/2, integral exponents
  std::vector<GeneralizedTerm> generic_numerator;
  std::vector<GeneralizedTerm> generic_denominator;
  // g = delta/2, delta even
  std::vector<GeneralizedTerm> half_numerator;
  std::vector<GeneralizedTerm> half_denominator;
  // g = 0
  std::vector<GeneralizedTerm> zero_numerator;
  std::vector<GeneralizedTerm> zero_denominator;

  bool empty() const;
  bool has_generalized() const;
  /// Signed factor list, the inverse of normalize().
  EtaExpr to_expr() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

struct QuotientProfile {
  /// Exponent of the q-power prefix in front of the integral series.
  Rational prefix;
  /// 24 * prefix for ordinary forms (E_G); Ntilde * prefix for forms with
  /// generalized factors (the order at infinity of the Ntilde-dilation).
  Rational E;
  Rational weight;
  /// gcd of the numerator parameters; 0 for a form without any.
  std::int64_t D = 0;
  std::int64_t L = 1;
  std::int64_t level = 576;     // 576 L^2
  std::int64_t n_tilde = 24;    // 24 L
};

EtaExpr parse(std::string_view text);
NormalForm normalize(const EtaExpr& expr);
inline NormalForm parse_normal_form(std::string_view text) { return normalize(parse(text)); }

/// Canonical text accepted by parse().
std::string print(const NormalForm& nf);
std::string print(const EtaExpr& expr);

QuotientProfile profile(const NormalForm& nf);

/// Integral series sum b(n) q^n; the prefix is set from the factors.
QSeries expand(const NormalForm& nf, std::size_t truncation, CoefficientRing ring);

/// Net eta(delta tau) exponents after rewriting zero- and half-class factors;
/// nullopt when generic generalized factors are present.
std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> ordinary_exponents(const NormalForm& nf);

/// tau -> m tau on every factor: eta(delta) -> eta(m delta), eta_{delta,g} -> eta_{m delta, m g}.
NormalForm dilate(const NormalForm& nf, std::int64_t m);
/// Raises every exponent to the k-th power (k may be negative).
NormalForm power(const NormalForm& nf, std::int64_t k);
NormalForm multiply(const NormalForm& a, const NormalForm& b);

enum class Family { partition_gen, t_regular, han_y1, han_ym1 };

struct FamilyParams {
  std::int64_t t = 1;
  std::int64_t z = 1;
};

Family family_from_name(std::string_view name);
const char* family_name(Family family);
EtaExpr build_named(Family family, const FamilyParams& params = {});

}  // namespace etalab
