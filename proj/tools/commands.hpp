#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qwalk::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidationFailure = 2, kIoError = 3 };

struct Options {
  std::uint64_t seed = 2019;
  unsigned n = 4;
  unsigned q = 1;
  double gamma = 0.3;
  std::optional<unsigned> c;
  double epsilon = 1e-3;
  std::vector<std::uint64_t> ns_schedule{100, 1000, 10000, 100000};
  std::uint64_t ns = 100000;
  unsigned runs = 10;
  std::string sampler = "auto";
  bool noise = false;
  double readout_error = 6.76e-2;
  std::string component = "0";
  std::string order = "ascending";
  std::string kind = "quantum";
  std::optional<double> weight_radius;
  unsigned threads = 0;
  std::string out;
  std::string system_file;
};

int cmd_gen(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_converge(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_matrix(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err);

/// Parses argv (flags, optional --config file) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
