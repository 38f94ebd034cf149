#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "sbmc/cli.h"
#include "sbmc/cycles.h"
#include "sbmc/error.h"
#include "sbmc/inference.h"

namespace sbmc::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw Error(ErrorKind::kParse, fmt::format("config key '{}': cannot read "
                                             "'{}' as {}",
                                             key, value, expected));
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad_value(key, text, "a number");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    bad_value(key, text, "a nonnegative integer");
  }
  return value;
}

template <typename T>
T parse_bounded(std::string_view key, std::string_view text) {
  const std::uint64_t v = parse_unsigned(key, text);
  if (v > std::numeric_limits<T>::max()) bad_value(key, text, "a smaller integer");
  return static_cast<T>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_value(key, text, "true or false");
}

std::vector<std::string_view> split_list(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    text = trim(text.substr(1, text.size() - 2));
  }
  std::vector<std::string_view> items;
  if (text.empty()) return items;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    items.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

std::string unquote(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  return std::string(text);
}

void check_length(std::string_view key, int k) {
  if (k < 3 || k > kMaxCycleLength) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("{} = {} is outside the supported cycle lengths "
                            "3..{}",
                            key, k, kMaxCycleLength));
  }
}

bool is_command(std::string_view name) {
  return std::find(std::begin(kCommands), std::end(kCommands), name) !=
         std::end(kCommands);
}

}  // namespace

std::vector<double> RunConfig::delta_grid() const {
  return deltas.empty() ? std::vector<double>{delta} : deltas;
}

std::vector<Vertex> RunConfig::n_grid() const {
  return ns.empty() ? std::vector<Vertex>{n} : ns;
}

std::vector<int> RunConfig::k_grid() const {
  return ks.empty() ? std::vector<int>{k} : ks;
}

std::string RunConfig::resolved_format() const {
  if (!format.empty()) return format;
  if (command == "ot-exact" || command == "detect") return "json";
  return "csv";
}

void RunConfig::validate() const {
  if (command.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("no command given; expected one of: {}",
                            fmt::join(kCommands, ", ")));
  }
  if (!is_command(command)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("unknown command '{}'; expected one of: {}",
                            command, fmt::join(kCommands, ", ")));
  }
  if (format != "" && format != "csv" && format != "json") {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("format = {}: use csv or json", format));
  }
  if (command == "sample" && format == "json") {
    throw Error(ErrorKind::kInvalidArgument,
                "sample writes an edge list; drop format = json");
  }
  if (!(c > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("c = {} must be positive", c));
  }
  for (double d : delta_grid()) {
    if (!(d >= 0.0 && d <= c)) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("delta = {} must lie in [0, c] = [0, {}]", d, c));
    }
  }
  for (Vertex v : n_grid()) {
    if (v < 1) throw Error(ErrorKind::kInvalidArgument, "n must be at least 1");
  }
  check_length("k", k);
  for (int kk : ks) check_length("ks", kk);
  if (remove_cycles != 0) check_length("remove_cycles", remove_cycles);
  parse_witness(witness);
  if (trials == 0) {
    throw Error(ErrorKind::kInvalidArgument, "trials must be at least 1");
  }
  if (samples < 2) {
    throw Error(ErrorKind::kInvalidArgument, "samples must be at least 2");
  }
  if (command == "lb-sweep" && samples < 100) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("lb-sweep needs samples >= 100, got {}", samples));
  }
  if (command == "ot-exact" || command == "enumerate") {
    const Vertex cap = allow_seven ? 7 : kExactDistributionCap;
    if (n > cap) {
      throw Error(ErrorKind::kCapExceeded,
                  fmt::format("{}: n = {} exceeds the exact cap of {}{}",
                              command, n, cap,
                              allow_seven ? "" : " (7 with allow_seven = true)"));
    }
  }
}

void apply_setting(RunConfig& config, std::string_view key,
                   std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "command") {
    config.command = unquote(value);
  } else if (key == "n") {
    config.n = parse_bounded<Vertex>(key, value);
  } else if (key == "c") {
    config.c = parse_double(key, value);
  } else if (key == "delta") {
    config.delta = parse_double(key, value);
  } else if (key == "flavor") {
    config.flavor = parse_flavor(unquote(value));
  } else if (key == "deltas") {
    config.deltas.clear();
    for (auto item : split_list(value)) {
      config.deltas.push_back(parse_double(key, item));
    }
  } else if (key == "ns") {
    config.ns.clear();
    for (auto item : split_list(value)) {
      config.ns.push_back(parse_bounded<Vertex>(key, item));
    }
  } else if (key == "ks") {
    config.ks.clear();
    for (auto item : split_list(value)) {
      config.ks.push_back(parse_bounded<int>(key, item));
    }
  } else if (key == "k") {
    config.k = parse_bounded<int>(key, value);
  } else if (key == "witness") {
    config.witness = unquote(value);
  } else if (key == "trials") {
    config.trials = parse_bounded<std::size_t>(key, value);
  } else if (key == "samples") {
    config.samples = parse_bounded<std::size_t>(key, value);
  } else if (key == "remove_cycles") {
    config.remove_cycles = parse_bounded<int>(key, value);
  } else if (key == "seed") {
    config.seed = parse_unsigned(key, value);
  } else if (key == "input") {
    config.input = unquote(value);
  } else if (key == "format") {
    config.format = unquote(value);
  } else if (key == "allow_seven") {
    config.allow_seven = parse_bool(key, value);
  } else if (key == "output") {
    config.output = unquote(value);
  } else if (key == "workers") {
    config.workers = parse_bounded<unsigned>(key, value);
  } else {
    throw Error(ErrorKind::kParse, fmt::format("unknown config key '{}'", key));
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const RunConfig& config) {
  return {
      {"command", config.command},
      {"n", fmt::format("{}", config.n)},
      {"c", fmt::format("{}", config.c)},
      {"delta", fmt::format("{}", config.delta)},
      {"flavor", std::string(to_string(config.flavor))},
      {"deltas", fmt::format("[{}]", fmt::join(config.deltas, ", "))},
      {"ns", fmt::format("[{}]", fmt::join(config.ns, ", "))},
      {"ks", fmt::format("[{}]", fmt::join(config.ks, ", "))},
      {"k", fmt::format("{}", config.k)},
      {"witness", config.witness},
      {"trials", fmt::format("{}", config.trials)},
      {"samples", fmt::format("{}", config.samples)},
      {"remove_cycles", fmt::format("{}", config.remove_cycles)},
      {"seed", fmt::format("{}", config.seed)},
      {"input", config.input},
      {"format", config.resolved_format()},
      {"allow_seven", config.allow_seven ? "true" : "false"},
  };
}

void load_config_text(RunConfig& config, std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse,
                  fmt::format("config: invalid JSON ({})", e.what()));
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw Error(ErrorKind::kParse,
                  "config: JSON input has no \"config\" object");
    }
    for (const auto& [key, value] : doc["config"].items()) {
      std::string flat;
      if (value.is_string()) {
        flat = value.get<std::string>();
      } else if (value.is_array()) {
        std::vector<std::string> items;
        for (const auto& item : value) items.push_back(item.dump());
        flat = fmt::format("{}", fmt::join(items, ", "));
      } else {
        flat = value.dump();
      }
      apply_setting(config, key, flat);
    }
    return;
  }

  std::istringstream in{std::string(text)};
  std::string line;
  bool artifact = false;
  bool first_line = true;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = trim(line);
    if (first_line && view == "# sbmc-config") {
      artifact = true;
      first_line = false;
      continue;
    }
    first_line = false;
    if (artifact) {
      // The config block ends at the first line that is not a comment.
      if (view.empty() || view.front() != '#') break;
      view = trim(view.substr(1));
    } else {
      view = trim(view.substr(0, view.find('#')));
    }
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kParse,
                  fmt::format("config line {}: expected 'key = value', got "
                              "'{}'",
                              number, view));
    }
    apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kParse,
                fmt::format("cannot open config file '{}'", path));
  }
  std::ostringstream text;
  text << in.rdbuf();
  load_config_text(config, text.str());
}

}  // namespace sbmc::cli
