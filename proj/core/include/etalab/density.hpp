#pragma once

// Proportion of integral-series coefficients divisible by M, sampled at
// increasing cutoffs X. Indices n in [0, X) are counted.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etalab/arith.hpp"
#include "etalab/etaexpr.hpp"

namespace etalab {

inline constexpr std::size_t kDefaultDensityBudget = 10'000'000;

struct DensitySample {
  std::int64_t X = 0;
  std::int64_t count = 0;
  Rational delta;  // count / X
};

struct DensityTable {
  std::string expression;
  std::uint64_t modulus = 2;
  std::vector<DensitySample> samples;
};

/// One pass mod M up to the largest checkpoint. Checkpoints must be positive
/// and strictly increasing; the largest must not exceed `budget`.
DensityTable density_scan(const NormalForm& nf, std::uint64_t M, const std::vector<std::int64_t>& checkpoints,
                          std::size_t budget = kDefaultDensityBudget);

/// Counts over an already expanded series (exact or residue), reducing mod M.
std::vector<std::int64_t> divisible_counts(const QSeries& series, std::uint64_t M,
                                           const std::vector<std::int64_t>& checkpoints);

/// Decimal with exactly `digits` places, rounded half away from zero.
std::string render_decimal(const Rational& r, int digits);

/// Digits used by the published tables for the quotients they cover
/// (4 for 1/eta(1), 6 for eta(18)^3/eta(1), 5 for geta(9,0)/geta(6,1)).
std::optional<int> published_digits(const NormalForm& nf);

enum class TableFormat { csv, json };

/// No digits: deltas print as reduced fractions.
std::string emit_table(const DensityTable& table, TableFormat format, std::optional<int> digits = std::nullopt);

/// Header X,delta_mod<M1>,delta_mod<M2>,...; all tables need the same checkpoints.
std::string emit_wide_csv(const std::vector<DensityTable>& tables, std::optional<int> digits = std::nullopt);

/// JSON as written by emit_table (one table, or an array of tables).
std::vector<DensityTable> tables_from_json(const std::string& text);

}  // namespace etalab
