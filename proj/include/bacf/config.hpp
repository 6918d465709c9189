#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "bacf/bacf_core.hpp"

namespace bacf::config {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  core::BacfParams params;
  std::string sequence;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 1;
  /// Upper bounds for the randomized selftest instances.
  int selftest_max_samples = 256;
  int selftest_max_channels = 31;
};

/// Sets one key. Throws ParseError naming the key when it is unknown or the
/// value does not parse.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key = value" file; '#' starts a comment. Keys are the names printed
/// by to_text.
void load_file(RunConfig& cfg, const std::filesystem::path& file);

/// Every key with its current value, one "key = value" line each.
std::string to_text(const RunConfig& cfg);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

}  // namespace bacf::config
