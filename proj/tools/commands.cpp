#include "commands.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace galforms::cli {

namespace {

std::uint64_t size_guard_for(const RunConfig& config) {
  return config.mode == "random" ? kRandomSizeGuard : kDefaultSizeGuard;
}

CensusMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return CensusMode::kExhaustive;
  if (mode == "random") return CensusMode::kRandom;
  throw ParseError("unknown mode '" + mode + "' (expected exhaustive or random)");
}

CensusConfig census_config(const RunConfig& config) {
  return {parse_mode(config.mode), config.samples, config.seed, config.budget, config.workers};
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string plain_kelem(const BaseField& k, KElem a) {
  if (k.degree() == 1) return std::to_string(a);
  std::string out = "(";
  const auto d = k.digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
  return out + ")";
}

std::string plain_matrix(const GramForm& g) {
  std::string out;
  for (Index j = 0; j < g.entries().rows(); ++j) {
    for (Index c = 0; c < g.entries().cols(); ++c)
      out += (c ? " " : "") + plain_kelem(g.tower().base(), g(j, c));
    out += "\n";
  }
  return out;
}

std::string plain_element(const TowerField& f, const FieldElement& x) {
  std::string out = "[";
  for (std::size_t j = 0; j < x.coords.size(); ++j) out += (j ? " " : "") + plain_kelem(f.base(), x.coords[j]);
  return out + "]";
}

}  // namespace

CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return {kExitParse, "", std::string("parse error: ") + e.what()};
  } catch (const PreconditionError& e) {
    return {kExitPrecondition, "", std::string("precondition violated: ") + e.what()};
  } catch (const Error& e) {
    return {kExitClaimViolated, "", std::string("internal error: ") + e.what()};
  }
}

// ---------------------------------------------------------------------------

CommandResult cmd_form(const RunConfig& config, std::string_view b_text, std::uint32_t i) {
  const auto tower = make_tower(config.params, size_guard_for(config));
  const TowerField& f = *tower;
  const FieldElement b = parse_element(f, b_text);
  const GramForm form = build_alt_form(tower, b, {i});
  const RankReport report = rank(form);

  CommandResult result;
  const bool agree = report.predicted && report.predicted->rank == report.rank;
  result.exit_code = agree ? kExitOk : kExitClaimViolated;
  if (!agree)
    result.diagnostics = "computed rank " + std::to_string(report.rank) + " disagrees with the prediction";
  if (config.plain) {
    result.output = plain_matrix(form);
    result.output += "rank " + std::to_string(report.rank) + "\n";
    result.output += "predicted " + std::to_string(report.predicted->rank) + " " +
                     std::string(to_string(report.predicted->branch)) + "\n";
  } else {
    result.output = dump(Json{{"form", gram_to_json(form)}, {"rank", rank_report_to_json(f, report)}});
  }
  return result;
}

CommandResult cmd_census(const RunConfig& config, std::string_view family, std::vector<std::uint32_t> indices) {
  const CensusConfig cc = census_config(config);
  const auto tower = make_tower(config.params, size_guard_for(config));
  const TowerField& f = *tower;
  if (indices.empty()) throw PreconditionError("census needs at least one index");

  CensusReport report;
  if (family == "alt") {
    std::vector<AutomorphismIndex> idx;
    for (auto i : indices) idx.push_back({i});
    report = rank_census(tower, idx, cc);
  } else if (family == "bil") {
    report = bil_census(tower, indices, cc);
  } else {
    throw ParseError("unknown family '" + std::string(family) + "' (expected alt or bil)");
  }

  CommandResult result;
  if (!report.bound_holds()) {
    result.exit_code = kExitClaimViolated;
    const auto r = report.min_rank();
    result.diagnostics = "rank " + std::to_string(r) + " is below the bound " + std::to_string(*report.bound) +
                         "; witness " + elements_to_json(f, report.witnesses.at(r)).dump();
  }
  if (config.plain) {
    std::ostringstream os;
    os << "mode " << to_string(report.mode) << " inspected " << report.inspected << "\n";
    for (const auto& [r, c] : report.ranks) os << "rank " << r << " count " << c << "\n";
    os << "min_rank " << report.min_rank() << "\n";
    if (report.bound) os << "bound " << *report.bound << (report.bound_holds() ? " holds" : " violated") << "\n";
    result.output = os.str();
  } else {
    result.output = dump(census_to_json(f, report));
  }
  return result;
}

CommandResult cmd_moore(const RunConfig& config, std::string_view xs_text) {
  const auto tower = make_tower(config.params, size_guard_for(config));
  const TowerField& f = *tower;
  const auto xs = parse_element_list(f, xs_text);
  const MooreMatrix s = moore_matrix(f, xs);
  const FieldElement det = determinant(f, s);
  const bool via_moore = f.is_zero(det);
  const bool via_elim = dependent_via_elim(f, xs);

  CommandResult result;
  result.exit_code = via_moore == via_elim ? kExitOk : kExitClaimViolated;
  if (config.plain) {
    std::string out;
    for (Index i = 0; i < s.rows(); ++i) {
      for (Index j = 0; j < s.cols(); ++j) out += (j ? " " : "") + plain_element(f, s(i, j));
      out += "\n";
    }
    out += "det " + plain_element(f, det) + "\n";
    out += std::string("dependent ") + (via_moore ? "yes" : "no") + "\n";
    result.output = out;
  } else {
    result.output = dump(Json{{"params", params_to_json(f.params())},
                              {"matrix", moore_to_json(f, s)},
                              {"determinant", element_to_json(f, det)},
                              {"dependent_via_moore", via_moore},
                              {"dependent_via_elim", via_elim}});
  }
  return result;
}

CommandResult cmd_annihilator(const RunConfig& config, std::string_view basis_text) {
  const auto tower = make_tower(config.params, size_guard_for(config));
  const TowerField& f = *tower;
  const auto u = parse_element_list(f, basis_text);
  const SigmaPoly w = annihilator_poly(f, u);
  const auto kernel = kernel_of_sigma_poly(f, w);

  std::vector<FieldElement> joined = u;
  joined.insert(joined.end(), kernel.begin(), kernel.end());
  const bool equal = kernel.size() == u.size() && span_dimension(f, joined) == u.size();

  CommandResult result;
  result.exit_code = equal ? kExitOk : kExitClaimViolated;
  if (config.plain) {
    std::string out;
    for (std::size_t i = 0; i < w.coeffs().size(); ++i)
      out += "t^" + std::to_string(i) + " " + plain_element(f, w.coeffs()[i]) + "\n";
    out += std::string("kernel_equals_span ") + (equal ? "yes" : "no") + "\n";
    result.output = out;
  } else {
    result.output = dump(Json{{"params", params_to_json(f.params())},
                              {"basis", elements_to_json(f, u)},
                              {"poly", sigma_poly_to_json(f, w)},
                              {"degree", w.degree()},
                              {"kernel", elements_to_json(f, kernel)},
                              {"kernel_equals_span", equal}});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Export

std::vector<ExportBlock> build_export(const TowerPtr& tower, const RunConfig& config,
                                      const std::vector<std::string>& what) {
  if (what.empty()) throw PreconditionError("export needs a non-empty --what filter");
  bool bases = false;
  bool witnesses = false;
  for (const auto& w : what) {
    if (w == "bases") {
      bases = true;
    } else if (w == "witnesses") {
      witnesses = true;
    } else {
      throw ParseError("unknown export item '" + w + "' (expected bases or witnesses)");
    }
  }
  const TowerField& f = *tower;
  const std::uint32_t n = f.degree();
  const std::uint32_t m = n % 2 == 1 ? (n - 1) / 2 : (n - 2) / 2;

  std::vector<ExportBlock> blocks;
  if (bases) {
    if (n % 2 == 0) {
      const FormSpace s = space_A(tower, {n / 2});
      blocks.push_back({"B1", std::string(to_string(s.kind)), {n / 2}, {}, s.basis});
    }
    for (std::uint32_t i = 1; i <= m; ++i) {
      const FormSpace s = space_A(tower, {i});
      blocks.push_back({"A" + std::to_string(i), std::string(to_string(s.kind)), {i}, {}, s.basis});
    }
  }
  if (witnesses) {
    CensusConfig cc = census_config(config);
    for (std::uint32_t k = 1; k <= m; ++k) {
      std::vector<AutomorphismIndex> idx;
      std::vector<std::uint32_t> raw;
      for (std::uint32_t i = 1; i <= k; ++i) {
        idx.push_back({i});
        raw.push_back(i);
      }
      CensusConfig local = cc;
      unsigned __int128 need = 1;
      for (std::uint32_t i = 0; i < k; ++i) need *= f.order();
      if (local.mode == CensusMode::kExhaustive && need > local.budget) local.mode = CensusMode::kRandom;
      const CensusReport report = rank_census(tower, idx, local);
      ExportBlock block{"witnesses A1..A" + std::to_string(k), "witness", raw, {}, {}};
      for (const auto& [r, tuple] : report.witnesses) {
        GramForm g = GramForm::zero(tower);
        for (std::uint32_t i = 1; i <= k; ++i) g = g + build_alt_form(tower, tuple[i - 1], {i});
        block.ranks.push_back(r);
        block.matrices.push_back(GramForm(tower, g.entries()));
      }
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

Json export_to_json(const TowerField& f, const std::vector<ExportBlock>& blocks) {
  Json out{{"tower", tower_to_json(f)}, {"blocks", Json::array()}};
  for (const auto& b : blocks) {
    Json mats = Json::array();
    for (const auto& g : b.matrices) mats.push_back(gram_to_json(g)["entries"]);
    Json block{{"name", b.name}, {"kind", b.kind}, {"indices", b.indices}};
    if (!b.ranks.empty()) block["ranks"] = b.ranks;
    block["matrices"] = std::move(mats);
    out["blocks"].push_back(std::move(block));
  }
  return out;
}

std::vector<ExportBlock> export_from_json(const TowerPtr& tower, const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw ParseError("export document needs a blocks array");
  if (j.contains("tower") && params_from_json(j["tower"]) != tower->params())
    throw ContextMismatch("export was written for a different tower");
  std::vector<ExportBlock> blocks;
  for (const auto& b : j["blocks"]) {
    ExportBlock block;
    block.name = b.at("name").get<std::string>();
    block.kind = b.at("kind").get<std::string>();
    block.indices = b.at("indices").get<std::vector<std::uint32_t>>();
    if (b.contains("ranks")) block.ranks = b["ranks"].get<std::vector<std::uint32_t>>();
    for (const auto& entries : b.at("matrices")) block.matrices.push_back(gram_from_json(tower, Json{{"entries", entries}}));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

// Plain layout:
//   tower p s n
//   block <kind> <count> <indices,comma> <name...>
//   matrix [rank]
//   <n rows of n entries; entries are residues, or d0,d1,... when s > 1>
std::string export_to_plain(const TowerField& f, const std::vector<ExportBlock>& blocks) {
  std::ostringstream os;
  os << "tower " << f.params().p << " " << f.params().s << " " << f.params().n << "\n";
  for (const auto& b : blocks) {
    std::string idx;
    for (std::size_t i = 0; i < b.indices.size(); ++i) idx += (i ? "," : "") + std::to_string(b.indices[i]);
    os << "block " << b.kind << " " << b.matrices.size() << " " << idx << " " << b.name << "\n";
    for (std::size_t m = 0; m < b.matrices.size(); ++m) {
      os << "matrix";
      if (m < b.ranks.size()) os << " " << b.ranks[m];
      os << "\n";
      for (Index r = 0; r < b.matrices[m].entries().rows(); ++r) {
        for (Index c = 0; c < b.matrices[m].entries().cols(); ++c) {
          const auto d = f.base().digits(b.matrices[m](r, c));
          os << (c ? " " : "");
          for (std::size_t e = 0; e < d.size(); ++e) os << (e ? "," : "") << d[e];
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

std::vector<ExportBlock> export_from_plain(const TowerPtr& tower, std::string_view text) {
  const TowerField& f = *tower;
  std::istringstream is{std::string(text)};
  std::string word;
  TowerParams params;
  if (!(is >> word >> params.p >> params.s >> params.n) || word != "tower")
    throw ParseError("plain export must start with a tower line");
  if (params != f.params()) throw ContextMismatch("export was written for a different tower");

  auto parse_entry = [&](const std::string& tok) {
    std::vector<std::uint32_t> digits;
    std::stringstream ts(tok);
    std::string part;
    while (std::getline(ts, part, ',')) {
      try {
        digits.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      } catch (const std::exception&) {
        throw ParseError("bad matrix entry '" + tok + "'");
      }
    }
    Json j(digits);
    return kelem_from_json(f.base(), j);
  };

  std::vector<ExportBlock> blocks;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> word;
    if (word == "block") {
      ExportBlock b;
      std::size_t count = 0;
      std::string idx;
      ls >> b.kind >> count >> idx;
      std::getline(ls >> std::ws, b.name);
      std::stringstream is_idx(idx);
      std::string part;
      while (std::getline(is_idx, part, ',')) b.indices.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      blocks.push_back(std::move(b));
    } else if (word == "matrix") {
      if (blocks.empty()) throw ParseError("matrix before any block");
      std::uint32_t r = 0;
      if (ls >> r) blocks.back().ranks.push_back(r);
      Matrix<KElem> m(f.degree(), f.degree(), 0);
      for (Index row = 0; row < m.rows(); ++row) {
        if (!std::getline(is, line)) throw ParseError("truncated matrix");
        std::istringstream rs(line);
        for (Index c = 0; c < m.cols(); ++c) {
          std::string tok;
          if (!(rs >> tok)) throw ParseError("short matrix row");
          m(row, c) = parse_entry(tok);
        }
      }
      blocks.back().matrices.emplace_back(tower, std::move(m));
    } else {
      throw ParseError("unexpected line '" + line + "'");
    }
  }
  return blocks;
}

CommandResult cmd_export(const RunConfig& config, const std::vector<std::string>& what) {
  if (what.empty()) throw PreconditionError("export needs a non-empty --what filter");
  const auto tower = make_tower(config.params, size_guard_for(config));
  const auto blocks = build_export(tower, config, what);
  CommandResult result;
  result.output = config.plain ? export_to_plain(*tower, blocks) : dump(export_to_json(*tower, blocks));
  return result;
}

}  // namespace galforms::cli
