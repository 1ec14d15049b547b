#pragma once

#include <json.hpp>

#include <utility>

#include "tvlab/exact_arith.hpp"
#include "tvlab/product_dist.hpp"
#include "tvlab/reductions.hpp"
#include "tvlab/tv_engine.hpp"

namespace tvlab::json {

using nlohmann::json;

// Rationals travel as reduced "a/b" strings ("a" when b == 1). Integers are
// also accepted on input.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

// {"n": int, "params": ["a/b", ...]}
json to_json(const ProductDistribution& dist);
ProductDistribution distribution_from_json(const json& j);

// {"P": <distribution>, "Q": <distribution>}
json pair_to_json(const ProductDistribution& p, const ProductDistribution& q);
std::pair<ProductDistribution, ProductDistribution> pair_from_json(const json& j);

// {"a": [ints], "T": int}; big values may be given as decimal strings.
json to_json(const SubsetProdInstance& instance);
SubsetProdInstance subsetprod_from_json(const json& j);

// {"p": ["a/b", ...], "v": "a/b"}
json to_json(const PmfEqualsInstance& instance);
PmfEqualsInstance pmfequals_from_json(const json& j);

json to_json(const ReductionArtifacts& artifacts);
json to_json(const MembershipReport& report);

/// Parses a document, turning syntax errors into FormatError.
json parse(std::string_view text);

}  // namespace tvlab::json
