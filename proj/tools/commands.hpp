#pragma once

// Batch commands behind the galforms executable. Each returns its primary
// output as a string plus an exit code, so the same code paths are usable
// from tests without spawning a process.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "galforms/serialize.hpp"

namespace galforms::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimViolated = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
  TowerParams params;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = kDefaultBudget;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  unsigned workers = 1;
  bool plain = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;       // JSON or plain text, destined for --out or stdout
  std::string diagnostics;  // human-readable notes for stderr
};

/// Runs `body`, turning library exceptions into the documented exit codes.
CommandResult guarded(const std::function<CommandResult()>& body);

CommandResult cmd_form(const RunConfig& config, std::string_view b_text, std::uint32_t i);

CommandResult cmd_census(const RunConfig& config, std::string_view family, std::vector<std::uint32_t> indices);

CommandResult cmd_verify(const RunConfig& config);

/// `what` is a subset of {"bases", "witnesses"}.
CommandResult cmd_export(const RunConfig& config, const std::vector<std::string>& what);

CommandResult cmd_moore(const RunConfig& config, std::string_view xs_text);

CommandResult cmd_annihilator(const RunConfig& config, std::string_view basis_text);

/// One exported block of Gram matrices.
struct ExportBlock {
  std::string name;
  std::string kind;
  std::vector<std::uint32_t> indices;
  std::vector<std::uint32_t> ranks;  // per matrix; filled for witness blocks
  std::vector<GramForm> matrices;
};

std::vector<ExportBlock> build_export(const TowerPtr& tower, const RunConfig& config,
                                      const std::vector<std::string>& what);
Json export_to_json(const TowerField& f, const std::vector<ExportBlock>& blocks);
std::vector<ExportBlock> export_from_json(const TowerPtr& tower, const Json& j);
std::string export_to_plain(const TowerField& f, const std::vector<ExportBlock>& blocks);
std::vector<ExportBlock> export_from_plain(const TowerPtr& tower, std::string_view text);

}  // namespace galforms::cli
