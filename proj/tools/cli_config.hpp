#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfpca::cli {

inline constexpr const char* kCommands[] = {"simulate-errors", "simulate-npc", "weather",
                                            "mfpca-run"};

struct RunConfig {
  std::string command;
  std::optional<std::string> config_path;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t reps = 500;
  std::size_t threads = 0;  // 0 = hardware threads
  std::vector<double> alphas;
  std::vector<std::size_t> n{25, 50, 100};
  std::vector<std::size_t> s{25, 50, 100};
  std::vector<std::size_t> mj;
  std::string cuts = "equal";
  std::size_t components = 25;
  std::vector<std::string> inputs;
  std::size_t basis = 0;
  bool all_components = false;
  std::string data;
};

class UsageError : public std::runtime_error {
 public:
  enum class Kind { Usage, Config, Io };
  UsageError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct ParseResult {
  std::optional<RunConfig> config;  // empty when only help was requested
  std::string help;
};

/// Keys accepted in the config file (and as long flags) for `command`.
const std::vector<std::string>& valid_keys(const std::string& command);

/// Flat sectioned key = value file:
///   # comment
///   [simulate-npc]
///   reps = 500
///   alpha = 50, 70, 90
/// Keys above the first section header apply to every command.
std::map<std::string, std::string> read_config_file(const std::string& path,
                                                    const std::string& command);

/// args excludes the program name. Values from --config are applied first;
/// flags given on the command line win.
ParseResult parse_config(const std::vector<std::string>& args, const std::string& default_data_dir);

std::string help_text();

}  // namespace mfpca::cli
