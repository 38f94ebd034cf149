#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sbmc/graph.h"
#include "sbmc/models.h"

namespace sbmc::cli {

inline constexpr std::string_view kCommands[] = {
    "sample", "stats",        "ot-exact", "lb-sweep",       "detect",
    "detect-sweep", "bisect", "variance-check", "enumerate"};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr const char* kSeedEnvVar = "SBMC_SEED";

// Fully resolved run configuration. Every field has a default so that any
// artifact's embedded config, replayed through --config, names one run.
struct RunConfig {
  std::string command;
  Vertex n = 1000;
  double c = 2.0;
  double delta = 1.0;
  Flavor flavor = Flavor::kPlantedAssortative;
  std::vector<double> deltas;  // empty: {delta}
  std::vector<Vertex> ns;      // empty: {n}
  std::vector<int> ks;         // empty: {k}
  int k = 3;
  std::string witness = "packing:3";
  std::size_t trials = 200;
  std::size_t samples = 1000;
  int remove_cycles = 0;  // detect: adversary deletes cycles up to this length
  std::uint64_t seed = kDefaultSeed;
  std::string input;   // edge-list file for stats and bisect
  std::string format;  // csv or json; empty picks the command's default
  bool allow_seven = false;

  // Not part of the embedded config: neither changes the artifact's content.
  std::string output;  // empty: stdout
  unsigned workers = 0;

  std::vector<double> delta_grid() const;
  std::vector<Vertex> n_grid() const;
  std::vector<int> k_grid() const;
  ModelSpec model() const { return {n, c, delta, flavor}; }
  std::string resolved_format() const;

  // Throws sbmc::Error with a message naming the offending key.
  void validate() const;
};

// Sets one key from its text form. Throws kParse on an unknown key or a
// malformed value.
void apply_setting(RunConfig& config, std::string_view key,
                   std::string_view value);

// Ordered (key, value) pairs for every embedded key.
std::vector<std::pair<std::string, std::string>> config_entries(
    const RunConfig& config);

// Reads a config file into `config`. Accepts plain "key = value" files
// ('#' comments, lists as "a, b, c" or "[a, b, c]"), CSV or edge-list
// artifacts (leading "# sbmc-config" block), and JSON artifacts (their
// "config" object).
void load_config_text(RunConfig& config, std::string_view text);
void load_config_file(RunConfig& config, const std::string& path);

// Executes the run and writes its artifact to `out`.
void run(const RunConfig& config, std::ostream& out);

// Entry point shared by the sbmc binary and the tests. Returns the process
// exit status: 0 on success, 1 on a run error, 2 on a usage error.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

std::string version_string();

}  // namespace sbmc::cli
