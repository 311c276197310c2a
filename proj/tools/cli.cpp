#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "etalab/density.hpp"
#include "etalab/error.hpp"
#include "etalab/etaexpr.hpp"
#include "etalab/hooklen.hpp"
#include "etalab/lacunarity.hpp"
#include "etalab/modform.hpp"

namespace etalab::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string expr;
  std::string family;
  std::int64_t t = 1;
  std::int64_t z = 1;
  std::int64_t y = 1;
  std::vector<std::uint64_t> moduli;
  std::vector<std::int64_t> checkpoints;
  std::optional<std::size_t> terms;
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> a;
  std::int64_t j = 1;
  std::string format = "csv";
  bool json_flag = false;
  bool paper_style = false;
  std::optional<int> digits;
  std::optional<std::int64_t> cap;
  std::string output;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json integer(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return z.get_si();
  return z.get_str();
}

json rational(const Rational& r) { return json{{"num", integer(r.get_num())}, {"den", integer(r.get_den())}}; }

// Integers print as plain numbers, everything else as {num, den}.
json number(const Rational& r) { return r.get_den() == 1 ? integer(r.get_num()) : rational(r); }

std::int64_t budget(const RunConfig& cfg, std::int64_t fallback) {
  if (cfg.cap) return *cfg.cap;
  if (const char* env = std::getenv("ETALAB_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError("ETALAB_CAP must be a positive integer");
    return v;
  }
  return fallback;
}

NormalForm input_form(const RunConfig& cfg) {
  if (cfg.expr.empty() == cfg.family.empty()) throw UsageError("give exactly one of --expr and --family");
  if (!cfg.expr.empty()) return parse_normal_form(cfg.expr);
  Family family;
  if (cfg.family == "han") {
    if (cfg.y != 1 && cfg.y != -1) throw UsageError("--y must be 1 or -1");
    family = cfg.y == 1 ? Family::han_y1 : Family::han_ym1;
  } else {
    family = family_from_name(cfg.family);
  }
  return normalize(build_named(family, {cfg.t, cfg.z}));
}

std::size_t truncation(const RunConfig& cfg, std::size_t fallback) {
  const std::size_t T = cfg.terms.value_or(fallback);
  const auto limit = static_cast<std::size_t>(budget(cfg, static_cast<std::int64_t>(kDefaultDensityBudget)));
  if (T > limit)
    throw Error(Errc::budget_exceeded,
                "--terms " + std::to_string(T) + " exceeds the budget of " + std::to_string(limit));
  return T;
}

bool want_json(const RunConfig& cfg) { return cfg.json_flag || cfg.format == "json"; }

std::string run_expand(const RunConfig& cfg) {
  const NormalForm nf = input_form(cfg);
  const std::size_t T = truncation(cfg, 20);
  if (cfg.moduli.size() > 1) throw UsageError("expand takes at most one --mod");
  const CoefficientRing ring =
      cfg.moduli.empty() ? CoefficientRing::exact() : CoefficientRing::residue(cfg.moduli.front());
  const QSeries s = expand(nf, T, ring);
  if (want_json(cfg)) {
    json coeffs = json::array();
    for (std::size_t n = 0; n <= T; ++n) coeffs.push_back(integer(s.coefficient(n)));
    json doc{{"expr", print(nf)}, {"prefix", rational(s.prefix())}, {"ring", to_string(ring)},
             {"terms", T},        {"coefficients", std::move(coeffs)}};
    return doc.dump(2) + "\n";
  }
  std::string out = "n,coefficient\n";
  for (std::size_t n = 0; n <= T; ++n) out += std::to_string(n) + "," + to_string(s.coefficient(n)) + "\n";
  return out;
}

std::string run_analyze(const RunConfig& cfg) {
  const NormalForm nf = input_form(cfg);
  const QuotientProfile prof = profile(nf);
  json doc;
  doc["expr"] = print(nf);
  doc["weight"] = number(prof.weight);
  doc["prefix"] = rational(prof.prefix);
  doc["E"] = number(prof.E);
  doc["D"] = prof.D;
  doc["L"] = prof.L;
  doc["level"] = prof.level;

  std::optional<HolomorphyReport> report;
  std::string not_modular;
  try {
    report = dilated_holomorphy_report(nf);
  } catch (const Error& e) {
    if (e.code() != Errc::not_modular) throw;
    not_modular = e.what();
  }
  doc["group"] = nf.has_generalized() ? "Gamma1" : "Gamma0";
  doc["modular"] = report.has_value();
  if (report) {
    doc["holomorphic"] = report->holomorphic;
    doc["min_order"] = number(report->min_order);
    doc["witness"] = to_string(report->orders[report->witness].cusp);
  } else {
    doc["holomorphic"] = nullptr;
    doc["min_order"] = nullptr;
    doc["witness"] = nullptr;
  }

  const LacunarityVerdict v = lacunarity_check(nf, 2);
  const bool has_bound = v.reason == "ok" || v.reason == "bound_not_met" || v.reason == "pa_not_dividing_D";
  if (nf.has_generalized()) {
    doc["thm1_bound_sq"] = nullptr;
    doc["thm3_positivity"] = v.positivity ? rational(*v.positivity) : json(nullptr);
    doc["thm3_bound_sq"] = has_bound ? rational(v.bound_sq) : json(nullptr);
  } else {
    doc["thm1_bound_sq"] = has_bound ? rational(v.bound_sq) : json(nullptr);
  }
  json primes = json::array();
  if (prof.D > 0 && has_bound) {
    for (std::int64_t p = 2; p <= prof.D; ++p) {
      if (prof.D % p != 0 || !is_prime(p)) continue;
      const LacunarityVerdict pv = lacunarity_check(nf, p);
      primes.push_back(json{{"p", p}, {"a", pv.a}, {"satisfied", pv.satisfied}});
    }
  }
  doc["primes"] = std::move(primes);

  if (want_json(cfg)) return doc.dump(2) + "\n";
  std::ostringstream os;
  for (const auto& [key, value] : doc.items()) {
    os << key << ": ";
    if (value.is_string())
      os << value.get<std::string>();
    else if (value.is_object() && value.contains("num"))
      os << value["num"].dump() << (value["den"] == 1 ? "" : "/" + value["den"].dump());
    else
      os << value.dump();
    os << "\n";
  }
  if (!not_modular.empty()) os << "note: " << not_modular << "\n";
  return os.str();
}

std::string run_lacunarity(const RunConfig& cfg) {
  const NormalForm nf = input_form(cfg);
  if (!cfg.p) throw UsageError("lacunarity needs --p");
  const LacunarityVerdict v = lacunarity_check(nf, *cfg.p, cfg.a);
  if (want_json(cfg)) return json::parse(verdict_to_json(v, print(nf))).dump(2) + "\n";
  std::ostringstream os;
  os << criterion_name(v.criterion) << " p=" << v.p << " a=" << v.a << " bound_sq=" << to_string(v.bound_sq);
  if (v.positivity) os << " positivity=" << to_string(*v.positivity);
  os << " " << (v.satisfied ? "satisfied" : "not satisfied") << " (" << v.reason << ")\n";
  return os.str();
}

std::string run_density(const RunConfig& cfg) {
  const NormalForm nf = input_form(cfg);
  if (cfg.moduli.empty()) throw UsageError("density needs --mod");
  if (cfg.checkpoints.empty()) throw UsageError("density needs --at");
  for (std::size_t i = 1; i < cfg.checkpoints.size(); ++i)
    if (cfg.checkpoints[i] <= cfg.checkpoints[i - 1]) throw UsageError("--at values must be strictly increasing");
  const auto limit = static_cast<std::size_t>(budget(cfg, static_cast<std::int64_t>(kDefaultDensityBudget)));

  std::vector<std::future<DensityTable>> jobs;
  for (std::uint64_t M : cfg.moduli)
    jobs.push_back(std::async(std::launch::async, [&nf, M, &cfg, limit] {
      return density_scan(nf, M, cfg.checkpoints, limit);
    }));
  std::vector<DensityTable> tables;
  for (auto& job : jobs) tables.push_back(job.get());

  std::optional<int> digits = cfg.digits;
  if (!digits && cfg.paper_style) digits = published_digits(nf).value_or(6);

  if (want_json(cfg)) {
    if (tables.size() == 1) return emit_table(tables.front(), TableFormat::json, digits);
    std::string out = "[\n";
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::string one = emit_table(tables[i], TableFormat::json, digits);
      one.pop_back();
      out += one + (i + 1 < tables.size() ? ",\n" : "\n");
    }
    return out + "]\n";
  }
  if (tables.size() == 1) return emit_table(tables.front(), TableFormat::csv, digits);
  return emit_wide_csv(tables, digits);
}

std::string run_verify(const RunConfig& cfg, bool& failed) {
  if (cfg.family != "han" && cfg.family != "han_y1" && cfg.family != "han_ym1")
    throw UsageError("verify needs --family han (with --t, --y, --z)");
  std::int64_t y = cfg.y;
  if (cfg.family == "han_y1") y = 1;
  if (cfg.family == "han_ym1") y = -1;
  if (y != 1 && y != -1) throw UsageError("--y must be 1 or -1");
  const std::int64_t cap = budget(cfg, kDefaultPartitionCap);
  const std::size_t T = cfg.terms.value_or(18);
  const IdentityReport r = verify_identity(cfg.t, y, cfg.z, T, cap);
  failed = !r.ok;
  if (want_json(cfg)) {
    json doc{{"t", cfg.t}, {"y", y}, {"z", cfg.z}, {"terms", T}, {"ok", r.ok}};
    doc["first_mismatch"] = r.first_mismatch ? json(*r.first_mismatch) : json(nullptr);
    doc["detail"] = r.detail;
    return doc.dump(2) + "\n";
  }
  return r.ok ? "OK\n" : "MISMATCH: " + r.detail + "\n";
}

std::string run_companion(const RunConfig& cfg, bool& failed) {
  const NormalForm nf = input_form(cfg);
  if (!cfg.p) throw UsageError("companion needs --p");
  const std::int64_t p = *cfg.p;
  if (cfg.j < 1) throw UsageError("--j must be >= 1");
  const std::int64_t a = cfg.a.value_or(std::max<std::int64_t>(1, max_exponent_dividing(profile(nf).D, p)));
  const std::int64_t k = cfg.j - 1;  // F uses f^(p^(j-1)) and agrees with nf modulo p^j
  const std::size_t T = truncation(cfg, 600);

  const NormalForm f = build_companion_f(nf, p, a);
  const NormalForm F = build_companion_F(nf, p, a, k);
  const CompanionWeight w = companion_weight(nf, p, a, k);
  const VerificationResult unit = verify_unit_lemma(nf, p, a, k, T);
  const VerificationResult cong = verify_F_congruence(nf, p, a, k, T);
  failed = !(unit.ok && cong.ok);

  if (want_json(cfg)) {
    json doc;
    doc["expr"] = print(nf);
    doc["p"] = p;
    doc["a"] = a;
    doc["j"] = cfg.j;
    doc["modulus"] = ipow(p, static_cast<unsigned>(cfg.j));
    doc["dilation"] = companion_dilation(nf);
    doc["f"] = print(f);
    doc["F"] = print(F);
    doc["weight"] = number(w.weight);
    doc["warning"] = w.warning ? json(*w.warning) : json(nullptr);
    doc["terms"] = T;
    doc["unit_lemma"] = json{{"ok", unit.ok}, {"detail", unit.detail}};
    doc["congruence"] = json{{"ok", cong.ok}, {"detail", cong.detail}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "f = " << print(f) << "\n"
     << "F = " << print(F) << "\n"
     << "weight = " << to_string(w.weight) << "\n";
  if (w.warning) os << "warning: " << *w.warning << "\n";
  os << "f^" << ipow(p, static_cast<unsigned>(k)) << " = 1 mod " << ipow(p, static_cast<unsigned>(cfg.j)) << ": "
     << (unit.ok ? "OK" : "FAIL") << " (" << unit.detail << ")\n"
     << "F = nf(" << companion_dilation(nf) << " tau) mod " << ipow(p, static_cast<unsigned>(cfg.j)) << ": "
     << (cong.ok ? "OK" : "FAIL") << " (" << cong.detail << ")\n";
  return os.str();
}

void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--expr", cfg.expr, "eta-quotient, e.g. \"eta(18)^3/eta(1)\"");
  sub->add_option("--family", cfg.family, "partition | t_regular | han_y1 | han_ym1 | han");
  sub->add_option("--t", cfg.t, "family parameter t");
  sub->add_option("--z", cfg.z, "family parameter z");
  sub->add_option("--y", cfg.y, "han sign, 1 or -1");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--json", cfg.json_flag, "same as --format json");
  sub->add_option("--output", cfg.output, "write the document to a file");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Eta-quotient expansions, cusp analysis, lacunarity criteria and density tables", "etalab"};
  app.require_subcommand(1);

  auto* expand_cmd = app.add_subcommand("expand", "integral q-series coefficients");
  add_input_options(expand_cmd, cfg);
  expand_cmd->add_option("--terms", cfg.terms, "truncation T (coefficients 0..T)");
  expand_cmd->add_option("--mod", cfg.moduli, "reduce modulo M");
  expand_cmd->add_option("--cap", cfg.cap, "truncation budget");
  add_output_options(expand_cmd, cfg);

  auto* analyze_cmd = app.add_subcommand("analyze", "weight, level, cusp orders and criterion bounds");
  add_input_options(analyze_cmd, cfg);
  add_output_options(analyze_cmd, cfg);

  auto* lac_cmd = app.add_subcommand("lacunarity", "exact lacunarity verdict for a prime power");
  add_input_options(lac_cmd, cfg);
  lac_cmd->add_option("--p", cfg.p, "prime");
  lac_cmd->add_option("--a", cfg.a, "exponent (default: largest with p^a | D)");
  add_output_options(lac_cmd, cfg);

  auto* density_cmd = app.add_subcommand("density", "proportion of coefficients divisible by M");
  add_input_options(density_cmd, cfg);
  density_cmd->add_option("--mod", cfg.moduli, "modulus M (repeatable)");
  density_cmd->add_option("--at", cfg.checkpoints, "cutoff X (repeatable, increasing)");
  density_cmd->add_flag("--paper-style", cfg.paper_style, "decimals with the published table precision");
  density_cmd->add_option("--digits", cfg.digits, "decimal places")->check(CLI::Range(0, 30));
  density_cmd->add_option("--cap", cfg.cap, "largest X allowed");
  add_output_options(density_cmd, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "hook-length identity against its product and eta forms");
  add_input_options(verify_cmd, cfg);
  verify_cmd->add_option("--terms", cfg.terms, "truncation T");
  verify_cmd->add_option("--cap", cfg.cap, "partition size cap");
  add_output_options(verify_cmd, cfg);

  auto* comp_cmd = app.add_subcommand("companion", "companion forms f and F and their congruences");
  add_input_options(comp_cmd, cfg);
  comp_cmd->add_option("--p", cfg.p, "prime");
  comp_cmd->add_option("--a", cfg.a, "exponent (default: largest with p^a | D)");
  comp_cmd->add_option("--j", cfg.j, "check modulo p^j (j >= 1)");
  comp_cmd->add_option("--terms", cfg.terms, "truncation T");
  comp_cmd->add_option("--cap", cfg.cap, "truncation budget");
  add_output_options(comp_cmd, cfg);

  std::ostringstream doc;
  bool failed = false;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (cfg.format == "json") cfg.json_flag = true;

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "expand")
      doc << run_expand(cfg);
    else if (name == "analyze")
      doc << run_analyze(cfg);
    else if (name == "lacunarity")
      doc << run_lacunarity(cfg);
    else if (name == "density")
      doc << run_density(cfg);
    else if (name == "verify")
      doc << run_verify(cfg, failed);
    else
      doc << run_companion(cfg, failed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'etalab --help' for usage\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << json{{"error", errc_name(e.code())}, {"message", e.what()}, {"position", e.position()}}.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    err << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << json{{"error", "io"}, {"message", "cannot write " + cfg.output}}.dump() << "\n";
      return 1;
    }
    file << doc.str();
  } else {
    out << doc.str();
  }
  return failed ? 1 : 0;
}

}  // namespace etalab::cli
