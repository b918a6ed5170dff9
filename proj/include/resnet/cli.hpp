#ifndef RESNET_CLI_HPP
#define RESNET_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace resnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfinite = 2, kVerifyFailed = 3 };

enum class Format { json, csv, text };

struct RunConfig {
  std::string command;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  Format format = Format::json;
  std::uint64_t seed = 0;

  // analyze
  std::vector<std::size_t> pair;
  // construct
  std::vector<std::string> spec_tokens;
  bool analyze = false;
  std::vector<std::string> theorem64;  // "ell=L eps=E [p=P]"
  // root
  std::string method = "sinks";
  std::size_t sinks = 1;
  std::size_t trials = 100;
  double p = 0.05;
  // bound-sweep
  double alpha_lo = 2.0;
  double alpha_hi = 6.0;
  double step = 0.01;
  std::size_t envelope_k = 64;
  // search
  std::string objective = "A";
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t mult_cap = 0;
  bool no_dedupe = false;
  bool progress = false;
  std::size_t max_steps = 0;
  // verify
  std::optional<std::string> filter;
  std::size_t theorem1_n = 10002;
};

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_root(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bound_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Machine output goes to `out` (or --output),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resnet::cli

#endif  // RESNET_CLI_HPP
