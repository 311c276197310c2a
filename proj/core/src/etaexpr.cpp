#include "etalab/etaexpr.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "etalab/error.hpp"

namespace etalab {

// ---- EtaExpr ---------------------------------------------------------------

EtaExpr& EtaExpr::times(EtaBase base, HalfInteger exponent) {
  if (!exponent.is_zero()) factors.push_back({base, exponent});
  return *this;
}

EtaExpr operator*(const EtaExpr& a, const EtaExpr& b) {
  EtaExpr out = a;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

// ---- parser ----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EtaExpr parse_expr() {
    EtaExpr out;
    parse_term(out, false);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = text_[pos_];
      if (c == '*') {
        ++pos_;
        parse_term(out, false);
      } else if (c == '/') {
        ++pos_;
        parse_term(out, true);
      } else {
        fail("expected '*', '/' or end of input");
      }
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what, Errc code = Errc::syntax) const {
    throw ParseError(code, pos_, what);
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  std::int64_t parse_int() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large", Errc::out_of_range);
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  HalfInteger parse_exponent() {
    skip_ws();
    if (at_end()) fail("expected an exponent");
    if (text_[pos_] == '-') {
      ++pos_;
      return -parse_exponent();
    }
    if (text_[pos_] == '(') {
      ++pos_;
      const std::int64_t num = parse_int();
      expect('/');
      skip_ws();
      const std::size_t den_pos = pos_;
      const std::int64_t den = parse_int();
      if (den != 2) {
        pos_ = den_pos;
        fail("exponent denominator must be 1 or 2", Errc::invalid_exponent);
      }
      expect(')');
      return HalfInteger::from_twice(num);
    }
    return HalfInteger(parse_int());
  }

  void parse_term(EtaExpr& out, bool inverted) {
    skip_ws();
    const std::size_t start = pos_;
    std::optional<EtaBase> base;
    if (accept_word("geta")) {
      expect('(');
      const std::size_t delta_pos = pos_;
      const std::int64_t delta = parse_int();
      if (delta < 1) {
        pos_ = delta_pos;
        fail("delta must be positive", Errc::invalid_parameter);
      }
      expect(',');
      const std::int64_t g = parse_int();
      expect(')');
      base = EtaBase::general(delta, g);
    } else if (accept_word("eta")) {
      expect('(');
      const std::size_t delta_pos = pos_;
      const std::int64_t delta = parse_int();
      if (delta < 1) {
        pos_ = delta_pos;
        fail("delta must be positive", Errc::invalid_parameter);
      }
      expect(')');
      base = EtaBase::ordinary(delta);
    } else if (!at_end() && text_[pos_] == '1' &&
               (pos_ + 1 == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;  // the empty product
    } else {
      pos_ = start;
      fail("expected eta(...), geta(...) or 1");
    }
    HalfInteger exponent(1);
    skip_ws();
    if (!at_end() && text_[pos_] == '^') {
      ++pos_;
      exponent = parse_exponent();
    }
    if (base) out.times(*base, inverted ? -exponent : exponent);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

EtaBase canonical(EtaBase b) {
  if (!b.generalized) return b;
  std::int64_t g = ((b.g % b.delta) + b.delta) % b.delta;
  b.g = std::min(g, b.delta - g);
  return b;
}

std::string base_text(const EtaBase& b) {
  if (b.generalized) return "geta(" + std::to_string(b.delta) + "," + std::to_string(b.g) + ")";
  return "eta(" + std::to_string(b.delta) + ")";
}

std::string exponent_suffix(HalfInteger e) {
  if (e == HalfInteger(1)) return "";
  if (e.is_integer()) return "^" + std::to_string(e.as_integer());
  if (e.negative()) return "^-(" + std::to_string(-e.twice()) + "/2)";
  return "^(" + std::to_string(e.twice()) + "/2)";
}

template <class Fn>
void for_each_generalized(const NormalForm& nf, Fn&& fn) {
  for (const auto& t : nf.generic_numerator) fn(t, t.exponent);
  for (const auto& t : nf.generic_denominator) fn(t, -t.exponent);
  for (const auto& t : nf.half_numerator) fn(t, t.exponent);
  for (const auto& t : nf.half_denominator) fn(t, -t.exponent);
  for (const auto& t : nf.zero_numerator) fn(t, t.exponent);
  for (const auto& t : nf.zero_denominator) fn(t, -t.exponent);
}

template <class Fn>
void for_each_delta(const NormalForm& nf, Fn&& fn) {
  for (const auto& t : nf.numerator) fn(t.delta);
  for (const auto& t : nf.denominator) fn(t.delta);
  for_each_generalized(nf, [&](const GeneralizedTerm& t, HalfInteger) { fn(t.delta); });
}

}  // namespace

EtaExpr parse(std::string_view text) { return Parser(text).parse_expr(); }

// ---- normal form -----------------------------------------------------------

bool NormalForm::empty() const {
  return numerator.empty() && denominator.empty() && !has_generalized();
}

bool NormalForm::has_generalized() const {
  return !generic_numerator.empty() || !generic_denominator.empty() || !half_numerator.empty() ||
         !half_denominator.empty() || !zero_numerator.empty() || !zero_denominator.empty();
}

EtaExpr NormalForm::to_expr() const {
  EtaExpr e;
  for (const auto& t : numerator) e.times(EtaBase::ordinary(t.delta), t.exponent);
  for (const auto& t : denominator) e.times(EtaBase::ordinary(t.delta), -t.exponent);
  for_each_generalized(*this, [&](const GeneralizedTerm& t, HalfInteger signed_exponent) {
    e.times(EtaBase::general(t.delta, t.g), signed_exponent);
  });
  return e;
}

NormalForm normalize(const EtaExpr& expr) {
  std::map<EtaBase, HalfInteger> merged;
  for (const auto& f : expr.factors) {
    if (f.base.delta < 1) throw Error(Errc::invalid_parameter, "delta must be positive");
    if (f.base.generalized && f.base.g < 0) throw Error(Errc::invalid_parameter, "g must be nonnegative");
    merged[canonical(f.base)] += f.exponent;
  }
  NormalForm nf;
  for (const auto& [base, e] : merged) {
    if (e.is_zero()) continue;
    const bool num = e.positive();
    const HalfInteger mag = e.abs();
    if (!base.generalized) {
      if (!e.is_integer())
        throw Error(Errc::invalid_exponent,
                    base_text(base) + "^" + e.str() + ": half-integer exponents need geta(d,0) or geta(d,d/2)");
      (num ? nf.numerator : nf.denominator).push_back({base.delta, mag.as_integer()});
      continue;
    }
    const GeneralizedTerm term{base.delta, base.g, mag};
    if (base.g == 0) {
      (num ? nf.zero_numerator : nf.zero_denominator).push_back(term);
    } else if (2 * base.g == base.delta) {
      (num ? nf.half_numerator : nf.half_denominator).push_back(term);
    } else {
      if (!e.is_integer())
        throw Error(Errc::invalid_exponent, base_text(base) + "^" + e.str() +
                                                ": half-integer exponents are allowed only when g = 0 or g = delta/2");
      (num ? nf.generic_numerator : nf.generic_denominator).push_back(term);
    }
  }
  return nf;
}

std::string print(const NormalForm& nf) {
  std::vector<std::string> num, den;
  const EtaExpr e = nf.to_expr();
  for (const auto& f : e.factors) {
    if (f.exponent.positive())
      num.push_back(base_text(f.base) + exponent_suffix(f.exponent));
    else
      den.push_back(base_text(f.base) + exponent_suffix(-f.exponent));
  }
  std::string out;
  if (num.empty()) {
    out = "1";
  } else {
    for (std::size_t i = 0; i < num.size(); ++i) out += (i ? "*" : "") + num[i];
  }
  for (const auto& d : den) out += "/" + d;
  return out;
}

std::string print(const EtaExpr& expr) {
  if (expr.factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < expr.factors.size(); ++i) {
    const auto& f = expr.factors[i];
    out += (i ? "*" : "") + base_text(f.base) + exponent_suffix(f.exponent);
  }
  return out;
}

// ---- invariants ------------------------------------------------------------

QuotientProfile profile(const NormalForm& nf) {
  QuotientProfile p;
  p.prefix = 0;
  p.weight = 0;
  for (const auto& t : nf.numerator) {
    p.prefix += make_rational(t.delta * t.exponent, 24);
    p.weight += make_rational(t.exponent, 2);
  }
  for (const auto& t : nf.denominator) {
    p.prefix -= make_rational(t.delta * t.exponent, 24);
    p.weight -= make_rational(t.exponent, 2);
  }
  for_each_generalized(nf, [&](const GeneralizedTerm& t, HalfInteger e) {
    p.prefix += bernoulli_p2(make_rational(t.g, t.delta)) * make_rational(t.delta, 2) * e.to_rational();
    if (t.g == 0) p.weight += e.to_rational();  // eta_{d,0} = eta(d tau)^2
  });
  p.prefix.canonicalize();
  p.weight.canonicalize();

  std::int64_t L = 1;
  for_each_delta(nf, [&](std::int64_t d) { L = lcm(L, d); });
  p.L = L;
  p.n_tilde = checked_mul(24, L);
  p.level = checked_mul(576, checked_mul(L, L));

  std::int64_t D = 0;
  for (const auto& t : nf.numerator) D = gcd(D, t.delta);
  if (nf.has_generalized()) {
    for (const auto& t : nf.generic_numerator) D = gcd(D, t.delta);
    for (const auto& t : nf.half_numerator) D = gcd(D, t.delta);
    for (const auto& t : nf.zero_numerator) D = gcd(D, t.delta);
    for (const auto& t : nf.half_denominator) D = gcd(D, t.delta / 2);
  }
  p.D = D;

  p.E = p.prefix * Rational(static_cast<long>(nf.has_generalized() ? p.n_tilde : 24));
  p.E.canonicalize();
  return p;
}

std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> ordinary_exponents(const NormalForm& nf) {
  if (!nf.generic_numerator.empty() || !nf.generic_denominator.empty()) return std::nullopt;
  std::map<std::int64_t, std::int64_t> net;
  for (const auto& t : nf.numerator) net[t.delta] += t.exponent;
  for (const auto& t : nf.denominator) net[t.delta] -= t.exponent;
  // eta_{d,0}^r = eta(d)^{2r};  eta_{d,d/2}^r = eta(d/2)^{2r} eta(d)^{-2r}
  auto add_general = [&](const GeneralizedTerm& t, HalfInteger e) {
    if (t.g == 0) {
      net[t.delta] += e.twice();
    } else {
      net[t.delta / 2] += e.twice();
      net[t.delta] -= e.twice();
    }
  };
  for (const auto& t : nf.half_numerator) add_general(t, t.exponent);
  for (const auto& t : nf.half_denominator) add_general(t, -t.exponent);
  for (const auto& t : nf.zero_numerator) add_general(t, t.exponent);
  for (const auto& t : nf.zero_denominator) add_general(t, -t.exponent);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [d, e] : net)
    if (e != 0) out.emplace_back(d, e);
  return out;
}

QSeries expand(const NormalForm& nf, std::size_t truncation, CoefficientRing ring) {
  NormalForm rest;
  rest.generic_numerator = nf.generic_numerator;
  rest.generic_denominator = nf.generic_denominator;
  NormalForm eta_part = nf;
  eta_part.generic_numerator.clear();
  eta_part.generic_denominator.clear();

  QSeries s = QSeries::one(ring, truncation);
  const auto exponents = ordinary_exponents(eta_part);
  for (const auto& [delta, e] : *exponents) {
    const std::int64_t reps = e < 0 ? -e : e;
    auto apply = [&](const SparseFactor& factor, std::int64_t times) {
      for (std::int64_t k = 0; k < times; ++k) e > 0 ? mul_inplace(s, factor) : div_inplace(s, factor);
    };
    // cubes cost about as much as a single pentagonal pass
    if (reps >= 3) apply(SparseFactor::jacobi_cube(delta, truncation), reps / 3);
    if (reps % 3) apply(SparseFactor::pentagonal(delta, truncation), reps % 3);
  }
  for (const auto& t : nf.generic_numerator) mul_residue_class_product_inplace(s, t.delta, t.g, t.exponent.as_integer());
  for (const auto& t : nf.generic_denominator)
    mul_residue_class_product_inplace(s, t.delta, t.g, -t.exponent.as_integer());
  return s.with_prefix(profile(nf).prefix);
}

// ---- transformations -------------------------------------------------------

NormalForm dilate(const NormalForm& nf, std::int64_t m) {
  if (m < 1) throw Error(Errc::invalid_parameter, "dilation factor must be >= 1");
  EtaExpr e = nf.to_expr();
  for (auto& f : e.factors) {
    f.base.delta = checked_mul(f.base.delta, m);
    f.base.g = checked_mul(f.base.g, m);
  }
  return normalize(e);
}

NormalForm power(const NormalForm& nf, std::int64_t k) {
  EtaExpr e = nf.to_expr();
  for (auto& f : e.factors) f.exponent = f.exponent * k;
  return normalize(e);
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) { return normalize(a.to_expr() * b.to_expr()); }

// ---- named families --------------------------------------------------------

Family family_from_name(std::string_view name) {
  if (name == "partition" || name == "partition_gen") return Family::partition_gen;
  if (name == "t_regular") return Family::t_regular;
  if (name == "han_y1") return Family::han_y1;
  if (name == "han_ym1") return Family::han_ym1;
  throw Error(Errc::invalid_parameter, "unknown family '" + std::string(name) + "'");
}

const char* family_name(Family family) {
  switch (family) {
    case Family::partition_gen: return "partition_gen";
    case Family::t_regular: return "t_regular";
    case Family::han_y1: return "han_y1";
    case Family::han_ym1: return "han_ym1";
  }
  return "?";
}

EtaExpr build_named(Family family, const FamilyParams& params) {
  const std::int64_t t = params.t;
  const std::int64_t z = params.z;
  if (family != Family::partition_gen && t < 1) throw Error(Errc::invalid_parameter, "family needs t >= 1");
  EtaExpr e;
  switch (family) {
    case Family::partition_gen:
      e.times(EtaBase::ordinary(1), -1);
      break;
    case Family::t_regular:
      e.times(EtaBase::ordinary(t), 1).times(EtaBase::ordinary(1), -1);
      break;
    case Family::han_y1:
      e.times(EtaBase::ordinary(t), z).times(EtaBase::ordinary(1), -1);
      break;
    case Family::han_ym1:
      e.times(EtaBase::ordinary(t), 2 * t - z)
          .times(EtaBase::ordinary(4 * t), t - z)
          .times(EtaBase::ordinary(1), -1)
          .times(EtaBase::ordinary(2 * t), -3 * (t - z));
      break;
  }
  return e;
}

}  // namespace etalab
