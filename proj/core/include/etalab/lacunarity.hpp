#pragma once

// Exact lacunarity criteria for eta-quotients modulo prime powers, the
// companion forms f and F used to certify them, and the congruence checks
// that tie F back to the original quotient.
//
// Index convention: the library functions take the construction index j,
// i.e. F = nf(m tau) * f^(p^j) and congruences hold modulo p^(j+1).

#include <cstdint>
#include <optional>
#include <string>

#include "etalab/arith.hpp"
#include "etalab/etaexpr.hpp"

namespace etalab {

enum class Criterion { thm1, thm3 };

const char* criterion_name(Criterion c);

struct LacunarityVerdict {
  Criterion criterion = Criterion::thm1;
  std::int64_t p = 2;
  std::int64_t a = 1;
  Rational bound_sq;
  std::optional<Rational> positivity;  // thm3 only
  bool satisfied = false;
  /// "ok", "p_not_prime", "a_not_positive", "generalized_factors",
  /// "non_integer_weight", "empty_numerator", "nonpositive_positivity",
  /// "pa_not_dividing_D" or "bound_not_met".
  std::string reason;
  std::int64_t D = 0;
};

/// Largest a with p^a | D (0 when p does not divide D, or D = 0).
std::int64_t max_exponent_dividing(std::int64_t D, std::int64_t p);

/// Ordinary quotients only. bound_sq = sum gamma s / sum r/delta. When `a` is
/// omitted the largest a with p^a | D is used (1 if there is none).
LacunarityVerdict thm1_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a = std::nullopt);

/// Generalized quotients; ordinary eta(d)^r factors are read as eta_{d,0}^{r/2}.
LacunarityVerdict thm3_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a = std::nullopt);

/// thm3_check when nf has generalized factors, thm1_check otherwise.
LacunarityVerdict lacunarity_check(const NormalForm& nf, std::int64_t p, std::optional<std::int64_t> a = std::nullopt);

struct Cor2Bounds {
  Rational part1_sq;  // t/z
  Rational part2_sq;  // 4(t + 6t^3 - 6t^2 z)/(9t - 5z)
};

/// Requires odd z with 0 < z < t (out_of_range otherwise).
Cor2Bounds cor2_bounds(std::int64_t t, std::int64_t z);

/// The dilation applied to nf inside F: 24, or 24 L for generalized forms.
std::int64_t companion_dilation(const NormalForm& nf);

/// The unit-congruent companion f_{p^a}, dilation included. 1 for a form
/// without denominators (or half-class numerators).
NormalForm build_companion_f(const NormalForm& nf, std::int64_t p, std::int64_t a);

/// F = nf(m tau) * f^(p^j).
NormalForm build_companion_F(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j);

struct VerificationResult {
  bool ok = false;
  /// Smallest exponent where the two sides differ.
  std::optional<std::size_t> first_mismatch;
  std::string detail;
};

/// f^(p^j) == 1 modulo p^(j+1) through q^T.
VerificationResult verify_unit_lemma(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j,
                                     std::size_t T);

/// expand(F) == nf expanded then dilated by m, modulo p^(j+1) through q^T.
VerificationResult verify_F_congruence(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j,
                                       std::size_t T);

struct CompanionWeight {
  Rational weight;
  bool integral = false;
  /// Set for the p = 2, j = 0 case with a half-odd weight.
  std::optional<std::string> warning;
};

CompanionWeight companion_weight(const NormalForm& nf, std::int64_t p, std::int64_t a, std::int64_t j);

/// {expr, p, a, criterion, bound_sq:{num,den}, positivity:{num,den}|null, satisfied, reason}
std::string verdict_to_json(const LacunarityVerdict& v, const std::string& expr);

}  // namespace etalab
