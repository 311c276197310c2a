#pragma once

#include <json.hpp>

#include "etalab/arith.hpp"

namespace etalab::detail {

using json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers; larger ones become decimal strings.
inline json integer_json(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return json(z.get_si());
  return json(z.get_str());
}

inline json rational_json(const Rational& r) {
  return json{{"num", integer_json(r.get_num())}, {"den", integer_json(r.get_den())}};
}

inline BigInt integer_from_json(const json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(static_cast<long>(j.get<std::int64_t>()));
}

inline Rational rational_from_json(const json& j) {
  return make_rational(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
}

}  // namespace etalab::detail
