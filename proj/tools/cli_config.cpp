#include "cli_config.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mfpca::cli {

namespace {

using Kind = UsageError::Kind;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string joined(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(Kind::Config, "invalid value '" + text + "' for " + key);
  }
  return value;
}

template <class T>
std::vector<T> parse_numbers(const std::string& key, const std::vector<std::string>& items) {
  std::vector<T> out;
  for (const auto& item : items) {
    for (const auto& part : split_list(item)) out.push_back(parse_number<T>(key, part));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError(Kind::Config, "invalid boolean '" + text + "' for " + key);
}

bool known_command(const std::string& c) {
  return std::find(std::begin(kCommands), std::end(kCommands), c) != std::end(kCommands);
}

// Applies one key to the config; values are raw strings (lists comma separated
// or repeated).
void apply(RunConfig& cfg, const std::string& key, const std::vector<std::string>& values) {
  const std::string& last = values.back();
  if (key == "out") cfg.out = last;
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, last);
  else if (key == "reps") cfg.reps = parse_number<std::size_t>(key, last);
  else if (key == "threads") cfg.threads = parse_number<std::size_t>(key, last);
  else if (key == "alpha") cfg.alphas = parse_numbers<double>(key, values);
  else if (key == "n") cfg.n = parse_numbers<std::size_t>(key, values);
  else if (key == "s") cfg.s = parse_numbers<std::size_t>(key, values);
  else if (key == "mj") cfg.mj = parse_numbers<std::size_t>(key, values);
  else if (key == "cuts") cfg.cuts = last;
  else if (key == "components") cfg.components = parse_number<std::size_t>(key, last);
  else if (key == "basis") cfg.basis = parse_number<std::size_t>(key, last);
  else if (key == "all-components") cfg.all_components = parse_bool(key, last);
  else if (key == "data") cfg.data = last;
  else if (key == "input") {
    cfg.inputs.clear();
    for (const auto& v : values)
      for (const auto& p : split_list(v)) cfg.inputs.push_back(p);
  } else {
    throw UsageError(Kind::Config, "unknown key '" + key + "'");
  }
}

void check_ranges(const RunConfig& cfg) {
  auto positive = [](const std::vector<std::size_t>& v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](std::size_t x) { return x > 0; });
  };
  if (cfg.command == "simulate-errors" || cfg.command == "simulate-npc") {
    if (cfg.reps < 1) throw UsageError(Kind::Config, "reps must be at least 1");
    if (!positive(cfg.n) || !positive(cfg.s)) throw UsageError(Kind::Config, "n and s need positive values");
    if (cfg.cuts != "equal" && cfg.cuts != "uniform") {
      throw UsageError(Kind::Config, "cuts must be 'equal' or 'uniform', got '" + cfg.cuts + "'");
    }
  }
  for (double a : cfg.alphas) {
    if (!(a > 0.0) || a > 100.0) throw UsageError(Kind::Config, "alpha values must lie in (0, 100]");
  }
  if (cfg.command == "simulate-errors" && !cfg.mj.empty() && !positive(cfg.mj)) {
    throw UsageError(Kind::Config, "mj values must be positive");
  }
  if (cfg.command == "mfpca-run") {
    if (cfg.inputs.empty()) throw UsageError(Kind::Usage, "mfpca-run needs at least one --input file");
    if (cfg.mj.size() != cfg.inputs.size()) {
      throw UsageError(Kind::Usage, "--mj needs one truncation per input file (" +
                                        std::to_string(cfg.inputs.size()) + " inputs, " +
                                        std::to_string(cfg.mj.size()) + " truncations)");
    }
    if (!positive(cfg.mj)) throw UsageError(Kind::Config, "mj values must be positive");
  }
}

}  // namespace

const std::vector<std::string>& valid_keys(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"simulate-errors", {"out", "seed", "reps", "threads", "n", "s", "mj", "cuts", "components"}},
      {"simulate-npc", {"out", "seed", "reps", "threads", "n", "s", "alpha", "cuts"}},
      {"weather", {"out", "data"}},
      {"mfpca-run", {"out", "input", "mj", "alpha", "basis", "all-components"}},
  };
  const auto it = keys.find(command);
  if (it == keys.end()) throw UsageError(Kind::Usage, "unknown command '" + command + "'");
  return it->second;
}

std::map<std::string, std::string> read_config_file(const std::string& path,
                                                    const std::string& command) {
  std::ifstream in(path);
  if (!in) throw UsageError(Kind::Io, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError(Kind::Config, where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_command(section)) {
        throw UsageError(Kind::Config, where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(Kind::Config, where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string target = section.empty() ? command : section;
    const auto& keys = valid_keys(target);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw UsageError(Kind::Config, where + "unknown key '" + key + "' for " + target +
                                         " (valid keys: " + joined(keys) + ")");
    }
    if (target == command) out[key] = value;
  }
  return out;
}

std::string help_text() {
  return "mfpca: multivariate functional PCA studies\n"
         "\n"
         "Usage: mfpca <command> [options]\n"
         "\n"
         "Commands:\n"
         "  simulate-errors   eigenvalue estimation errors over an (N, S) grid\n"
         "  simulate-npc      number of components selected by variance explained\n"
         "  weather           the Canadian weather application (two truncation scenarios)\n"
         "  mfpca-run         MFPCA on user CSV data, one file per feature\n"
         "\n"
         "Common options:\n"
         "  --config FILE     sectioned key = value file; flags override it\n"
         "  --out DIR         output directory (default .)\n"
         "\n"
         "simulate-errors / simulate-npc:\n"
         "  --seed U64        base seed (default 1)\n"
         "  --reps R          replications per cell (default 500)\n"
         "  --threads T       worker threads, 0 = hardware (default 0)\n"
         "  --n N             sample sizes, repeatable or comma separated (default 25,50,100)\n"
         "  --s S             grid points, repeatable or comma separated (default 25,50,100)\n"
         "  --cuts POLICY     equal | uniform (default equal)\n"
         "  --mj LIST         simulate-errors: shared truncations (default 5,10)\n"
         "  --components K    simulate-errors: eigenvalues scored (default 25)\n"
         "  --alpha A         simulate-npc: variance levels, repeatable (default 50,70,90,95,99)\n"
         "\n"
         "weather:\n"
         "  --data DIR        directory with temperature.csv, precipitation.csv, stations.csv\n"
         "\n"
         "mfpca-run:\n"
         "  --input FILE      feature CSV, repeatable (rows = grid points, columns = observations,\n"
         "                    optional leading 't' column)\n"
         "  --mj LIST         one truncation per input, comma separated (required)\n"
         "  --alpha A         variance levels for the NPC report (default 50,70,90,95,99)\n"
         "  --basis K         smooth each curve onto K cubic B-splines first (default off)\n"
         "  --all-components  also report components beyond min M_j, flagged unreliable\n"
         "\n"
         "Exit codes: 0 success, 1 computation error, 2 usage error.\n";
}

ParseResult parse_config(const std::vector<std::string>& args, const std::string& default_data_dir) {
  if (args.empty()) throw UsageError(Kind::Usage, help_text());
  if (args[0] == "-h" || args[0] == "--help" || args[0] == "help") return {std::nullopt, help_text()};
  const std::string command = args[0];
  if (!known_command(command)) {
    throw UsageError(Kind::Usage, "unknown command '" + command + "'\n\n" + help_text());
  }

  CLI::App app{"mfpca " + command};
  app.set_help_flag("-h,--help");
  std::string config_path;
  app.add_option("--config", config_path);
  std::map<std::string, std::vector<std::string>> raw;
  std::map<std::string, CLI::Option*> opts;
  bool all_components = false;
  for (const auto& key : valid_keys(command)) {
    if (key == "all-components") {
      opts[key] = app.add_flag("--all-components", all_components);
    } else {
      opts[key] = app.add_option("--" + key, raw[key])->allow_extra_args(false);
    }
  }

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, help_text()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(Kind::Usage, std::string(e.what()) + "\nvalid options for " + command + ": --config, --" +
                                      [&] {
                                        std::string s;
                                        for (const auto& k : valid_keys(command)) s += (s.empty() ? "" : ", --") + k;
                                        return s;
                                      }());
  }

  RunConfig cfg;
  cfg.command = command;
  cfg.data = default_data_dir;
  if (command == "simulate-npc" || command == "mfpca-run") cfg.alphas = {50, 70, 90, 95, 99};
  if (command == "simulate-errors") cfg.mj = {5, 10};

  if (!config_path.empty()) {
    cfg.config_path = config_path;
    for (const auto& [key, value] : read_config_file(config_path, command)) apply(cfg, key, {value});
  }
  for (const auto& [key, opt] : opts) {
    if (opt->count() == 0) continue;
    if (key == "all-components") cfg.all_components = all_components;
    else apply(cfg, key, raw[key]);
  }
  check_ranges(cfg);
  return {cfg, ""};
}

}  // namespace mfpca::cli
