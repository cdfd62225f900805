// galforms: batch front end over the library. Outputs JSON unless --plain.
//
// Exit codes: 0 ok, 1 a claimed property or bound failed, 2 parse error,
// 3 precondition or budget violation, 4 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace galforms::cli;

std::vector<std::uint32_t> parse_indices(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      const auto v = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw galforms::ParseError("bad index '" + part + "'");
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

std::string read_arg(const std::string& value) {
  if (value.empty() || value[0] != '@') return value;
  std::ifstream in(value.substr(1));
  if (!in) throw std::ios_base::failure("cannot read " + value.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-form rank tools over finite field towers"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string out_path;
  app.add_option("--p", config.params.p, "characteristic")->default_val(2);
  app.add_option("--s", config.params.s, "degree of K over GF(p)")->default_val(1);
  app.add_option("--n", config.params.n, "degree of L over K")->default_val(3);
  app.add_option("--seed", config.seed, "seed for random modes")->default_val(galforms::kDefaultSeed);
  app.add_option("--budget", config.budget, "exhaustive work limit")->default_val(galforms::kDefaultBudget);
  app.add_option("--mode", config.mode, "exhaustive or random")->default_val("exhaustive");
  app.add_option("--samples", config.samples, "samples in random mode")->default_val(10000);
  app.add_option("--workers", config.workers, "worker threads")->default_val(1);
  app.add_option("--out", out_path, "write the result here instead of stdout");
  app.add_flag("--plain", config.plain, "plain text instead of JSON");

  std::string b_text = "1";
  std::uint32_t i = 1;
  auto* form = app.add_subcommand("form", "Gram matrix and rank of f_{b,sigma^i}");
  form->add_option("--b", b_text, "element b (JSON or shorthand, @file)");
  form->add_option("--i", i, "automorphism index");

  std::string family = "alt";
  std::string indices = "1";
  auto* census = app.add_subcommand("census", "rank census over a sum of spaces");
  census->add_option("--kind", family, "alt or bil");
  census->add_option("--indices", indices, "comma-separated automorphism indices or powers");

  auto* verify = app.add_subcommand("verify", "run every property check on the tower");

  std::string what = "bases";
  auto* exp = app.add_subcommand("export", "export basis matrices and census witnesses");
  exp->add_option("--what", what, "comma-separated subset of bases,witnesses");

  std::string xs = "1";
  auto* moore = app.add_subcommand("moore", "Moore matrix dependence test");
  moore->add_option("--xs", xs, "';'-separated elements or a JSON array (@file)");

  std::string basis = "1";
  auto* ann = app.add_subcommand("annihilator", "sigma-polynomial vanishing exactly on span(U)");
  ann->add_option("--basis", basis, "';'-separated elements or a JSON array (@file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  CommandResult result;
  try {
    result = guarded([&]() -> CommandResult {
      if (form->parsed()) return cmd_form(config, read_arg(b_text), i);
      if (census->parsed()) return cmd_census(config, family, parse_indices(indices));
      if (verify->parsed()) return cmd_verify(config);
      if (exp->parsed()) return cmd_export(config, split_list(what));
      if (moore->parsed()) return cmd_moore(config, read_arg(xs));
      return cmd_annihilator(config, read_arg(basis));
    });
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }

  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << (result.diagnostics.back() == '\n' ? "" : "\n");
  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << "i/o error: cannot write " << out_path << "\n";
      return kExitIo;
    }
  }
  return result.exit_code;
}
