#include "tvlab/json_io.hpp"

#include <string>

#include "tvlab/error.hpp"

namespace tvlab::json {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw FormatError(std::string("field \"") + key + "\" must be an array");
  return a;
}

BigInt integer_from_json(const json& j) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const Rational r = Rational::parse(j.get<std::string>());
    if (r.is_integer()) return r.numerator();
  }
  throw FormatError("expected an integer, got " + j.dump());
}

json integer_to_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return v.get_si();
  return v.get_str();
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  throw FormatError("expected a rational \"a/b\", got " + j.dump());
}

json to_json(const ProductDistribution& dist) {
  json params = json::array();
  for (const Rational& p : dist.params()) params.push_back(to_json(p));
  return json{{"n", dist.dimension()}, {"params", std::move(params)}};
}

ProductDistribution distribution_from_json(const json& j) {
  const json& params = array_field(j, "params");
  std::vector<Rational> values;
  values.reserve(params.size());
  for (const json& p : params) values.push_back(rational_from_json(p));
  if (j.contains("n")) {
    const json& n = j.at("n");
    if (!n.is_number_unsigned() || n.get<std::size_t>() != values.size()) {
      throw FormatError("\"n\" does not match the number of params");
    }
  }
  return ProductDistribution(std::move(values));
}

json pair_to_json(const ProductDistribution& p, const ProductDistribution& q) {
  return json{{"P", to_json(p)}, {"Q", to_json(q)}};
}

std::pair<ProductDistribution, ProductDistribution> pair_from_json(const json& j) {
  return {distribution_from_json(field(j, "P")), distribution_from_json(field(j, "Q"))};
}

json to_json(const SubsetProdInstance& instance) {
  json a = json::array();
  for (const BigInt& v : instance.items()) a.push_back(integer_to_json(v));
  return json{{"a", std::move(a)}, {"T", integer_to_json(instance.target())}};
}

SubsetProdInstance subsetprod_from_json(const json& j) {
  std::vector<BigInt> items;
  for (const json& a : array_field(j, "a")) items.push_back(integer_from_json(a));
  return SubsetProdInstance(std::move(items), integer_from_json(field(j, "T")));
}

json to_json(const PmfEqualsInstance& instance) {
  json p = json::array();
  for (const Rational& r : instance.distribution().params()) p.push_back(to_json(r));
  return json{{"p", std::move(p)}, {"v", to_json(instance.value())}};
}

PmfEqualsInstance pmfequals_from_json(const json& j) {
  std::vector<Rational> p;
  for (const json& r : array_field(j, "p")) p.push_back(rational_from_json(r));
  return PmfEqualsInstance(std::move(p), rational_from_json(field(j, "v")));
}

json to_json(const ReductionArtifacts& a) {
  return json{{"case", std::string(case_name(a.case_tag))},
              {"beta", to_json(a.beta)},
              {"hatP", to_json(a.hat_p)},
              {"hatQ", to_json(a.hat_q)},
              {"primeP", to_json(a.prime_p)},
              {"primeQ", to_json(a.prime_q)},
              {"recovery_coefficient", to_json(a.recovery_coefficient)}};
}

json to_json(const MembershipReport& r) {
  return json{{"M", r.M.get_str()},
              {"accepting_paths", r.accepting_paths.get_str()},
              {"tv_from_paths", to_json(r.tv_from_paths)}};
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace tvlab::json
