#pragma once

// Cusps of Gamma0(N) and Gamma1(N), the eta-quotient modularity conditions,
// and exact orders of vanishing at cusps.
//
// Gamma0 computations take forms without generic generalized factors
// (zero- and half-class factors are rewritten as ordinary eta powers).
// Gamma1 computations accept everything: ordinary eta(d tau)^r enters as
// eta_{d,0}^{r/2}.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etalab/arith.hpp"
#include "etalab/etaexpr.hpp"

namespace etalab {

enum class Group { gamma0, gamma1 };

const char* group_name(Group g);

/// The cusp c/d of Gamma0(N).
struct Cusp0 {
  std::int64_t c = 1;
  std::int64_t d = 1;
  friend bool operator==(const Cusp0&, const Cusp0&) = default;
};

/// The cusp lambda/(mu epsilon) of Gamma1(N).
struct Cusp1 {
  std::int64_t lambda = 1;
  std::int64_t mu = 1;
  std::int64_t epsilon = 1;
  friend bool operator==(const Cusp1&, const Cusp1&) = default;
};

using Cusp = std::variant<Cusp0, Cusp1>;

std::string to_string(const Cusp& cusp);

/// Complete set of inequivalent cusps c/d: d | N, c over a reduced residue
/// system modulo (d, N/d), each lifted so that gcd(c, N) = 1.
std::vector<Cusp0> cusp_set_gamma0(std::int64_t N);

/// The full (possibly redundant) list lambda/(mu epsilon). Throws cap_exceeded
/// once more than `max_cusps` entries would be produced; large levels should
/// use cusp_classes_gamma1().
std::vector<Cusp1> cusp_set_gamma1(std::int64_t N, std::size_t max_cusps = 2'000'000);

/// One representative per class of Gamma1 cusps on which the order of `nf`
/// can differ: orders depend only on epsilon and on lambda * g modulo
/// (delta, epsilon), so lambda ranges over units modulo the lcm of the
/// relevant moduli and mu = 1.
std::vector<Cusp1> cusp_classes_gamma1(const NormalForm& nf, std::int64_t N);

/// Number of Gamma0(N) cusps, sum over d | N of phi((d, N/d)).
std::int64_t gamma0_cusp_count(std::int64_t N);

struct ModularityCondition {
  std::string name;
  Rational value;
  /// value must be divisible by this (24 on Gamma0, 2 on Gamma1)
  std::int64_t modulus = 1;
  bool satisfied = false;
};

struct ModularityStatus {
  Group group = Group::gamma0;
  std::int64_t level = 1;
  std::vector<ModularityCondition> conditions;
  bool satisfied = false;
};

/// Every delta must divide N (invalid_level otherwise). On Gamma0 the
/// conditions are integer weight, sum delta r = 0 (24) and sum (N/delta) r = 0 (24);
/// on Gamma1, sum delta P2(g/delta) r and sum N/(6 delta) r must lie in 2Z.
ModularityStatus modularity_check(const NormalForm& nf, std::int64_t N, Group group);

/// chi(d) = ((-1)^k s / d) with s = prod delta^{r_delta}; needs integer weight.
int kronecker_chi(const NormalForm& nf, const BigInt& d);

/// Gamma0 order at c/d: N/(24 d (d,N/d)) sum (d,delta)^2 r_delta / delta.
Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp0& cusp);
/// Gamma1 order at lambda/(mu epsilon) in the uniformizer q^(epsilon/N):
/// (N/2) sum (delta,epsilon)^2/(delta epsilon) P2(lambda g/(delta,epsilon)) r.
Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp1& cusp);
Rational order_at_cusp(const NormalForm& nf, std::int64_t N, const Cusp& cusp);

struct CuspOrder {
  Cusp cusp;
  Rational order;
};

struct HolomorphyReport {
  Group group = Group::gamma0;
  std::int64_t level = 1;
  Rational weight;
  ModularityStatus modularity;
  std::vector<CuspOrder> orders;
  Rational min_order;
  std::size_t witness = 0;  // index into orders of a cusp attaining min_order
  bool holomorphic = false;
  /// Gamma1 reports list class representatives that may be equivalent.
  bool representatives_may_repeat = false;
};

/// Orders at every cusp representative. Throws not_modular when the
/// modularity conditions fail at N, since the order formulas presuppose them;
/// with require_modularity = false the formulas are evaluated anyway and the
/// failed conditions are left in `modularity`.
HolomorphyReport holomorphy_report(const NormalForm& nf, std::int64_t N, Group group, bool require_modularity = true);

/// The report of nf(m tau) on its natural level 576 L^2, where m = 24 for
/// ordinary forms and m = 24 L for forms with generalized factors.
HolomorphyReport dilated_holomorphy_report(const NormalForm& nf);

/// {level, group, weight, cusps:[{repr, order_num, order_den}], min_order, holomorphic}
std::string report_to_json(const HolomorphyReport& report);

}  // namespace etalab
