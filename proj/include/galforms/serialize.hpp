#pragma once

// Canonical JSON wire format shared by every module and the CLI.
//
//   K-element     [d_0, ..., d_{s-1}]            digits in [0, p), low-degree-first
//   FieldElement  [k_0, ..., k_{n-1}]            K-coordinates against 1, v, ..., v^{n-1}
//   polynomial    [c_0, ..., c_d]                low-degree-first
//   GramForm      {"params", "entries", "provenance"}
//   SigmaPoly     [b_0, ..., b_d]                FieldElements, low-degree-first
//   MooreMatrix   k×k array of FieldElements
//
// Objects are emitted with a fixed key order so equal values serialize to
// identical bytes.

#include <string>
#include <string_view>
#include <vector>

#include "galforms/dependence.hpp"
#include "galforms/forms.hpp"
#include "galforms/spaces.hpp"
#include "json.hpp"

namespace galforms {

using Json = nlohmann::ordered_json;

Json params_to_json(const TowerParams& params);
TowerParams params_from_json(const Json& j);

/// {"p", "s", "n", "h", "g"}; h over GF(p), g over K.
Json tower_to_json(const TowerField& f);

Json kelem_to_json(const BaseField& k, KElem a);
KElem kelem_from_json(const BaseField& k, const Json& j);

Json element_to_json(const TowerField& f, const FieldElement& x);
FieldElement element_from_json(const TowerField& f, const Json& j);
Json elements_to_json(const TowerField& f, std::span<const FieldElement> xs);
std::vector<FieldElement> elements_from_json(const TowerField& f, const Json& j);

/// Accepts the canonical JSON encoding or the shorthand "(u+1)v^2 + 2v + u".
/// Shorthand: '+'/'-' separated terms, each an optional coefficient (an
/// integer, 'u', 'u^e', or a parenthesized u-polynomial) times an optional
/// 'v' or 'v^e'. Exponents are reduced by the field arithmetic.
FieldElement parse_element(const TowerField& f, std::string_view text);

/// A JSON array of elements, or shorthand elements separated by ';'.
std::vector<FieldElement> parse_element_list(const TowerField& f, std::string_view text);

Json gram_to_json(const GramForm& form);
GramForm gram_from_json(const TowerPtr& tower, const Json& j);

Json rank_report_to_json(const TowerField& f, const RankReport& report);
Json census_to_json(const TowerField& f, const CensusReport& report);
Json sigma_poly_to_json(const TowerField& f, const SigmaPoly& w);
SigmaPoly sigma_poly_from_json(const TowerField& f, const Json& j);
Json moore_to_json(const TowerField& f, const MooreMatrix& s);

}  // namespace galforms
