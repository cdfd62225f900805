#include "galforms/serialize.hpp"

#include <cctype>

namespace galforms {

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

std::uint32_t as_uint(const Json& j, const std::string& what) {
  expect(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
         what + " must be a non-negative integer");
  return j.get<std::uint32_t>();
}

// Recursive-descent parser for the shorthand element syntax.
class ShorthandParser {
 public:
  ShorthandParser(const TowerField& f, std::string_view text) : f_(f), k_(f.base()), text_(text) {}

  FieldElement parse() {
    FieldElement value = f_.zero();
    skip();
    expect(pos_ < text_.size(), "empty element");
    bool negate = consume('-');
    if (!negate) consume('+');
    while (true) {
      FieldElement term = parse_term();
      value = negate ? f_.sub(value, term) : f_.add(value, term);
      skip();
      if (pos_ == text_.size()) break;
      if (consume('+')) {
        negate = false;
      } else if (consume('-')) {
        negate = true;
      } else {
        throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "' in element");
      }
    }
    return value;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  // Next tokens are '*' followed by `c`.
  bool star_then(char c) {
    skip();
    std::size_t at = pos_;
    if (at >= text_.size() || text_[at] != '*') return false;
    ++at;
    while (at < text_.size() && std::isspace(static_cast<unsigned char>(text_[at]))) ++at;
    return at < text_.size() && text_[at] == c;
  }

  std::uint64_t integer() {
    expect(peek_digit(), "expected an integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      expect(v < (std::uint64_t{1} << 40), "integer too large");
      ++pos_;
    }
    return v;
  }

  std::uint64_t exponent() { return consume('^') ? integer() : 1; }

  KElem u_value() const {
    // u is the residue of the indeterminate modulo h; for s = 1, h = t + h_0.
    if (k_.degree() >= 2) return k_.characteristic();
    return k_.from_integer(-static_cast<std::int64_t>(k_.modulus()[0]));
  }

  KElem k_pow(KElem a, std::uint64_t e) const {
    KElem r = k_.one();
    for (std::uint64_t i = 0; i < e; ++i) r = k_.mul(r, a);
    return r;
  }

  // kterm := [int ['*']] ['u' ['^' int]]
  KElem parse_kterm() {
    KElem c = k_.one();
    bool any = false;
    if (peek_digit()) {
      c = k_.from_integer(static_cast<std::int64_t>(integer() % k_.characteristic()));
      if (star_then('u')) consume('*');
      any = true;
    }
    if (consume('u')) {
      c = k_.mul(c, k_pow(u_value(), exponent()));
      any = true;
    }
    expect(any, "expected a K-coefficient");
    return c;
  }

  KElem parse_kpoly() {
    KElem value = 0;
    bool negate = consume('-');
    if (!negate) consume('+');
    while (true) {
      const KElem t = parse_kterm();
      value = negate ? k_.sub(value, t) : k_.add(value, t);
      if (consume('+')) {
        negate = false;
      } else if (consume('-')) {
        negate = true;
      } else {
        return value;
      }
    }
  }

  // term := [coef ['*']] ['v' ['^' int]]
  FieldElement parse_term() {
    KElem coef = k_.one();
    bool any = false;
    skip();
    if (consume('(')) {
      coef = parse_kpoly();
      expect(consume(')'), "missing ')'");
      any = true;
    } else if (peek_digit() || (pos_ < text_.size() && text_[pos_] == 'u')) {
      coef = parse_kterm();
      any = true;
    }
    if (any) consume('*');
    FieldElement power = f_.one();
    if (consume('v')) {
      power = f_.pow(f_.basis(1), exponent());
      any = true;
    }
    expect(any, "expected a term");
    return f_.scale(coef, power);
  }

  const TowerField& f_;
  const BaseField& k_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Json params_to_json(const TowerParams& params) {
  return Json{{"p", params.p}, {"s", params.s}, {"n", params.n}};
}

TowerParams params_from_json(const Json& j) {
  expect(j.is_object() && j.contains("p") && j.contains("s") && j.contains("n"), "params need p, s, n");
  return {as_uint(j["p"], "p"), as_uint(j["s"], "s"), as_uint(j["n"], "n")};
}

Json tower_to_json(const TowerField& f) {
  Json g = Json::array();
  for (KElem c : f.modulus()) g.push_back(kelem_to_json(f.base(), c));
  return Json{{"p", f.params().p}, {"s", f.params().s}, {"n", f.params().n},
              {"h", f.base().modulus()}, {"g", std::move(g)}};
}

Json kelem_to_json(const BaseField& k, KElem a) { return Json(k.digits(a)); }

KElem kelem_from_json(const BaseField& k, const Json& j) {
  expect(j.is_array() && j.size() == k.degree(),
         "K-element must be an array of " + std::to_string(k.degree()) + " residues");
  std::vector<std::uint32_t> digits;
  for (const auto& d : j) {
    const auto v = as_uint(d, "residue");
    expect(v < k.characteristic(), "residue out of range [0, p)");
    digits.push_back(v);
  }
  return k.from_digits(digits);
}

Json element_to_json(const TowerField& f, const FieldElement& x) {
  Json out = Json::array();
  for (KElem c : x.coords) out.push_back(kelem_to_json(f.base(), c));
  return out;
}

FieldElement element_from_json(const TowerField& f, const Json& j) {
  expect(j.is_array() && j.size() == f.degree(),
         "element must be an array of " + std::to_string(f.degree()) + " K-elements");
  FieldElement x;
  for (const auto& c : j) x.coords.push_back(kelem_from_json(f.base(), c));
  return x;
}

Json elements_to_json(const TowerField& f, std::span<const FieldElement> xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(element_to_json(f, x));
  return out;
}

std::vector<FieldElement> elements_from_json(const TowerField& f, const Json& j) {
  expect(j.is_array(), "expected an array of elements");
  std::vector<FieldElement> out;
  for (const auto& x : j) out.push_back(element_from_json(f, x));
  return out;
}

FieldElement parse_element(const TowerField& f, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') return element_from_json(f, parse_json(text));
  return ShorthandParser(f, text).parse();
}

std::vector<FieldElement> parse_element_list(const TowerField& f, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') return elements_from_json(f, parse_json(text));
  std::vector<FieldElement> out;
  while (!text.empty()) {
    const auto cut = text.find(';');
    out.push_back(parse_element(f, text.substr(0, cut)));
    if (cut == std::string_view::npos) break;
    text.remove_prefix(cut + 1);
  }
  return out;
}

Json gram_to_json(const GramForm& form) {
  const TowerField& f = form.tower();
  Json entries = Json::array();
  for (Index j = 0; j < form.entries().rows(); ++j) {
    Json row = Json::array();
    for (Index c = 0; c < form.entries().cols(); ++c) row.push_back(kelem_to_json(f.base(), form(j, c)));
    entries.push_back(std::move(row));
  }
  Json provenance = nullptr;
  if (const auto* alt = std::get_if<AltProvenance>(&form.provenance())) {
    provenance = Json{{"kind", "alt"}, {"b", element_to_json(f, alt->b)}, {"i", alt->i.value}};
  } else if (const auto* gen = std::get_if<GeneralProvenance>(&form.provenance())) {
    provenance = Json{{"kind", "general"}, {"b", elements_to_json(f, gen->b)}};
  }
  return Json{{"params", params_to_json(f.params())}, {"entries", std::move(entries)},
              {"provenance", std::move(provenance)}};
}

GramForm gram_from_json(const TowerPtr& tower, const Json& j) {
  const TowerField& f = *tower;
  expect(j.is_object() && j.contains("entries"), "Gram form needs entries");
  if (j.contains("params") && params_from_json(j["params"]) != f.params())
    throw ContextMismatch("Gram form was written for a different tower");
  const auto& e = j["entries"];
  const Index n = f.degree();
  expect(e.is_array() && static_cast<Index>(e.size()) == n, "entries must have n rows");
  Matrix<KElem> m(n, n, 0);
  for (Index r = 0; r < n; ++r) {
    const auto& row = e[static_cast<std::size_t>(r)];
    expect(row.is_array() && static_cast<Index>(row.size()) == n, "entries must have n columns");
    for (Index c = 0; c < n; ++c) m(r, c) = kelem_from_json(f.base(), row[static_cast<std::size_t>(c)]);
  }
  Provenance provenance;
  if (j.contains("provenance") && j["provenance"].is_object()) {
    const auto& p = j["provenance"];
    const auto kind = p.value("kind", "");
    if (kind == "alt") {
      provenance = AltProvenance{element_from_json(f, p.at("b")), {as_uint(p.at("i"), "i")}};
    } else if (kind == "general") {
      provenance = GeneralProvenance{elements_from_json(f, p.at("b"))};
    } else {
      throw ParseError("unknown provenance kind '" + kind + "'");
    }
  }
  return GramForm(tower, std::move(m), std::move(provenance));
}

Json rank_report_to_json(const TowerField& f, const RankReport& report) {
  Json out{{"rank", report.rank}, {"radical", elements_to_json(f, report.radical_basis)}};
  if (report.predicted) {
    out["predicted"] = report.predicted->rank;
    out["branch"] = std::string(to_string(report.predicted->branch));
  } else {
    out["predicted"] = nullptr;
    out["branch"] = nullptr;
  }
  return out;
}

Json census_to_json(const TowerField& f, const CensusReport& report) {
  Json ranks = Json::object();
  for (const auto& [r, c] : report.ranks) ranks[std::to_string(r)] = c;
  Json witnesses = Json::object();
  for (const auto& [r, tuple] : report.witnesses) witnesses[std::to_string(r)] = elements_to_json(f, tuple);
  Json out{{"params", params_to_json(report.params)},
           {"space",
            {{"family", report.family == SpaceKind::kBilB ? "bil" : "alt"},
             {"indices", report.indices},
             {"dim", report.dim}}},
           {"mode", std::string(to_string(report.mode))},
           {"seed", report.seed},
           {"inspected", report.inspected},
           {"ranks", std::move(ranks)},
           {"min_rank", report.min_rank()},
           {"bound", report.bound ? Json(*report.bound) : Json(nullptr)},
           {"bound_holds", report.bound_holds()},
           {"witnesses", std::move(witnesses)}};
  return out;
}

Json sigma_poly_to_json(const TowerField& f, const SigmaPoly& w) { return elements_to_json(f, w.coeffs()); }

SigmaPoly sigma_poly_from_json(const TowerField& f, const Json& j) { return SigmaPoly(f, elements_from_json(f, j)); }

Json moore_to_json(const TowerField& f, const MooreMatrix& s) {
  Json out = Json::array();
  for (Index i = 0; i < s.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < s.cols(); ++j) row.push_back(element_to_json(f, s(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace galforms
