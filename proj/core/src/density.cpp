#include "etalab/density.hpp"

#include "etalab/error.hpp"
#include "etalab/qseries.hpp"
#include "json_util.hpp"

namespace etalab {

namespace {

void check_checkpoints(const std::vector<std::int64_t>& checkpoints) {
  if (checkpoints.empty()) throw Error(Errc::invalid_parameter, "no checkpoints given");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1) throw Error(Errc::invalid_parameter, "checkpoints must be positive");
    if (i && checkpoints[i] <= checkpoints[i - 1])
      throw Error(Errc::invalid_parameter, "checkpoints must be strictly increasing");
  }
}

std::string delta_text(const Rational& delta, std::optional<int> digits) {
  return digits ? render_decimal(delta, *digits) : to_string(delta);
}

detail::json table_json(const DensityTable& t, std::optional<int> digits) {
  using detail::json;
  json samples = json::array();
  for (const auto& s : t.samples)
    samples.push_back(json{{"X", s.X},
                           {"count", s.count},
                           {"delta", detail::rational_json(s.delta)},
                           {"delta_text", delta_text(s.delta, digits)}});
  json doc;
  doc["expression"] = t.expression;
  doc["modulus"] = t.modulus;
  doc["convention"] = "n in [0, X)";
  doc["samples"] = std::move(samples);
  return doc;
}

DensityTable table_from(const detail::json& j) {
  DensityTable t;
  t.expression = j.at("expression").get<std::string>();
  t.modulus = j.at("modulus").get<std::uint64_t>();
  for (const auto& s : j.at("samples"))
    t.samples.push_back({s.at("X").get<std::int64_t>(), s.at("count").get<std::int64_t>(),
                         detail::rational_from_json(s.at("delta"))});
  return t;
}

}  // namespace

std::vector<std::int64_t> divisible_counts(const QSeries& series, std::uint64_t M,
                                           const std::vector<std::int64_t>& checkpoints) {
  check_checkpoints(checkpoints);
  if (static_cast<std::size_t>(checkpoints.back()) > series.size())
    throw Error(Errc::out_of_range, "series too short for X = " + std::to_string(checkpoints.back()));
  const QSeries reduced = (series.ring().is_exact() || series.ring().modulus() != M) ? reduce_mod(series, M) : series;
  const auto& c = reduced.residues();
  std::vector<std::int64_t> out;
  std::int64_t count = 0;
  std::size_t n = 0;
  for (std::int64_t X : checkpoints) {
    for (; n < static_cast<std::size_t>(X); ++n) count += c[n] == 0;
    out.push_back(count);
  }
  return out;
}

DensityTable density_scan(const NormalForm& nf, std::uint64_t M, const std::vector<std::int64_t>& checkpoints,
                          std::size_t budget) {
  check_checkpoints(checkpoints);
  if (M < 2) throw Error(Errc::invalid_parameter, "modulus must be >= 2");
  if (static_cast<std::size_t>(checkpoints.back()) > budget)
    throw Error(Errc::budget_exceeded,
                "X = " + std::to_string(checkpoints.back()) + " exceeds the budget of " + std::to_string(budget));
  const QSeries s = expand(nf, static_cast<std::size_t>(checkpoints.back() - 1), CoefficientRing::residue(M));
  const auto counts = divisible_counts(s, M, checkpoints);
  DensityTable t;
  t.expression = print(nf);
  t.modulus = M;
  for (std::size_t i = 0; i < checkpoints.size(); ++i)
    t.samples.push_back({checkpoints[i], counts[i], make_rational(counts[i], checkpoints[i])});
  return t;
}

std::string render_decimal(const Rational& r, int digits) {
  if (digits < 0) throw Error(Errc::invalid_parameter, "digits must be nonnegative");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const bool negative = r < 0;
  const Rational scaled = abs(r) * Rational(scale) + Rational(1, 2);
  const BigInt n = floor(scaled);
  BigInt whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), n.get_mpz_t(), scale.get_mpz_t());
  std::string out = (negative && n != 0 ? "-" : "") + whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

std::optional<int> published_digits(const NormalForm& nf) {
  if (nf == parse_normal_form("1/eta(1)")) return 4;
  if (nf == parse_normal_form("eta(18)^3/eta(1)")) return 6;
  if (nf == parse_normal_form("geta(9,0)/geta(6,1)")) return 5;
  return std::nullopt;
}

std::string emit_table(const DensityTable& table, TableFormat format, std::optional<int> digits) {
  if (table.samples.empty()) throw Error(Errc::invalid_parameter, "empty table");
  if (format == TableFormat::json) return table_json(table, digits).dump(2) + "\n";
  std::string out = "X,count,delta\n";
  for (const auto& s : table.samples)
    out += std::to_string(s.X) + "," + std::to_string(s.count) + "," + delta_text(s.delta, digits) + "\n";
  return out;
}

std::string emit_wide_csv(const std::vector<DensityTable>& tables, std::optional<int> digits) {
  if (tables.empty() || tables.front().samples.empty()) throw Error(Errc::invalid_parameter, "empty table");
  std::string out = "X";
  for (const auto& t : tables) {
    if (t.samples.size() != tables.front().samples.size())
      throw Error(Errc::invalid_parameter, "tables have different checkpoints");
    out += ",delta_mod" + std::to_string(t.modulus);
  }
  out += "\n";
  for (std::size_t i = 0; i < tables.front().samples.size(); ++i) {
    out += std::to_string(tables.front().samples[i].X);
    for (const auto& t : tables) {
      if (t.samples[i].X != tables.front().samples[i].X)
        throw Error(Errc::invalid_parameter, "tables have different checkpoints");
      out += "," + delta_text(t.samples[i].delta, digits);
    }
    out += "\n";
  }
  return out;
}

std::vector<DensityTable> tables_from_json(const std::string& text) {
  try {
    const auto j = detail::json::parse(text);
    std::vector<DensityTable> out;
    if (j.is_array()) {
      for (const auto& t : j) out.push_back(table_from(t));
    } else {
      out.push_back(table_from(j));
    }
    return out;
  } catch (const detail::json::exception& e) {
    throw Error(Errc::syntax, std::string("density table: ") + e.what());
  }
}

}  // namespace etalab
