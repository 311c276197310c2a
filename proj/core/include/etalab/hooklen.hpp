#pragma once

// Integer partitions, hook lengths, and a brute-force check of the
// Nekrasov-Okounkov / Han hook-length product formula against eta-quotient
// expansions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "etalab/arith.hpp"
#include "etalab/qseries.hpp"

namespace etalab {

inline constexpr std::int64_t kDefaultPartitionCap = 60;

struct Partition {
  std::vector<std::int64_t> parts;  // nonincreasing, positive

  std::int64_t size() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Throws invalid_parameter unless parts are positive and nonincreasing.
void validate(const Partition& p);

/// Visits the partitions of n in descending lexicographic order.
void for_each_partition(std::int64_t n, const std::function<void(const Partition&)>& fn);

/// All partitions of n, same order. cap_exceeded when n > cap.
std::vector<Partition> partitions_of(std::int64_t n, std::int64_t cap = kDefaultPartitionCap);

Partition conjugate(const Partition& p);

/// arm + leg + 1 over all boxes, sorted descending.
std::vector<std::int64_t> hook_multiset(const Partition& p);

/// The hooks divisible by t.
std::vector<std::int64_t> hook_t(const Partition& p, std::int64_t t);

/// Sum over |lambda| = n of prod over t-divisible hooks of (y - t y z / h^2),
/// as numerators over one common denominator.
struct HanSeries {
  QSeries numerators;
  BigInt denominator;
};

/// y must be +1 or -1; T <= cap.
HanSeries han_lhs(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T,
                  std::int64_t cap = kDefaultPartitionCap);

/// prod (1 - q^(tn))^t / ((1 - y^n q^(tn))^(t - z) (1 - q^n)) by dense multiplication.
QSeries han_rhs_product(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T);

struct IdentityReport {
  bool ok = false;
  std::optional<std::size_t> first_mismatch;
  std::string detail;
};

/// han_lhs against both the direct product and the expansion of the
/// matching named eta-quotient.
IdentityReport verify_identity(std::int64_t t, std::int64_t y, std::int64_t z, std::size_t T,
                               std::int64_t cap = kDefaultPartitionCap);

}  // namespace etalab
