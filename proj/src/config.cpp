#include "bacf/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bacf::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ParseError("bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <typename T>
Setter number(T core::BacfParams::*field) {
  return [field](RunConfig& c, std::string_view k, std::string_view v) {
    c.params.*field = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"lambda", number(&core::BacfParams::lambda)},
      {"admm_iters", number(&core::BacfParams::admm_iters)},
      {"mu0", number(&core::BacfParams::mu0)},
      {"beta", number(&core::BacfParams::beta)},
      {"mu_max", number(&core::BacfParams::mu_max)},
      {"eta", number(&core::BacfParams::eta)},
      {"label_bandwidth_divisor", number(&core::BacfParams::label_bandwidth_divisor)},
      {"cell", number(&core::BacfParams::cell)},
      {"num_scales", number(&core::BacfParams::num_scales)},
      {"scale_step", number(&core::BacfParams::scale_step)},
      {"search_area_factor", number(&core::BacfParams::search_area_factor)},
      {"max_window_area", number(&core::BacfParams::max_window_area)},
      {"features",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "fhog")
           c.params.features = features::FeatureKind::Fhog;
         else if (v == "gradient")
           c.params.features = features::FeatureKind::Gradient;
         else
           throw ParseError("bad value '" + std::string(v) + "' for key '" + std::string(k) +
                            "' (expected fhog or gradient)");
       }},
      {"sequence", [](RunConfig& c, std::string_view, std::string_view v) { c.sequence = v; }},
      {"output", [](RunConfig& c, std::string_view, std::string_view v) { c.output = v; }},
      {"format",
       [](RunConfig& c, std::string_view k, std::string_view v) {
         if (v == "csv")
           c.format = OutputFormat::Csv;
         else if (v == "json")
           c.format = OutputFormat::Json;
         else
           throw ParseError("bad value '" + std::string(v) + "' for key '" + std::string(k) +
                            "' (expected csv or json)");
       }},
      {"seed", [](RunConfig& c, std::string_view k,
                  std::string_view v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"selftest_max_samples", [](RunConfig& c, std::string_view k, std::string_view v) {
         c.selftest_max_samples = parse_number<int>(k, v);
       }},
      {"selftest_max_channels", [](RunConfig& c, std::string_view k, std::string_view v) {
         c.selftest_max_channels = parse_number<int>(k, v);
       }},
  };
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const auto it = setters().find(trim(key));
  if (it == setters().end()) throw ParseError("unknown config key '" + std::string(trim(key)) + "'");
  it->second(cfg, trim(key), trim(value));
}

void load_file(RunConfig& cfg, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config file: " + file.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string to_text(const RunConfig& cfg) {
  const auto& p = cfg.params;
  std::ostringstream out;
  out << "lambda = " << format_double(p.lambda) << '\n'
      << "admm_iters = " << p.admm_iters << '\n'
      << "mu0 = " << format_double(p.mu0) << '\n'
      << "beta = " << format_double(p.beta) << '\n'
      << "mu_max = " << format_double(p.mu_max) << '\n'
      << "eta = " << format_double(p.eta) << '\n'
      << "label_bandwidth_divisor = " << format_double(p.label_bandwidth_divisor) << '\n'
      << "cell = " << p.cell << '\n'
      << "num_scales = " << p.num_scales << '\n'
      << "scale_step = " << format_double(p.scale_step) << '\n'
      << "search_area_factor = " << format_double(p.search_area_factor) << '\n'
      << "max_window_area = " << format_double(p.max_window_area) << '\n'
      << "features = " << (p.features == features::FeatureKind::Fhog ? "fhog" : "gradient") << '\n'
      << "sequence = " << cfg.sequence << '\n'
      << "output = " << cfg.output << '\n'
      << "format = " << (cfg.format == OutputFormat::Csv ? "csv" : "json") << '\n'
      << "seed = " << cfg.seed << '\n'
      << "selftest_max_samples = " << cfg.selftest_max_samples << '\n'
      << "selftest_max_channels = " << cfg.selftest_max_channels << '\n';
  return out.str();
}

}  // namespace bacf::config
