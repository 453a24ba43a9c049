#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace permgram {

struct CommandSpec {
  std::string subcommand;  // validate, enumerate, transform, difftest, stats, trace
  std::vector<std::string> inputs;
  std::string op;
  std::optional<int> k;
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::optional<std::string> hash;
  std::optional<std::string> map_file;
  std::optional<std::string> dfa_file;
  std::optional<std::string> with_file;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> max_form;
  std::optional<std::size_t> max_flags;
  bool check_ab = false;
  bool phase_guard = true;
  std::optional<std::string> output;
  std::optional<std::string> word;          // trace target
  std::optional<std::size_t> skeleton;      // trace leaf
  bool verbose = false;                     // per-stage sizes on stderr
};

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Exit codes: 0 success / equal, 1 invalid input or difference, 2 file, parse
// or argument errors, 3 enumeration not stabilized under the caps.
CommandResult run(const CommandSpec& cmd);

}  // namespace permgram
