#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bacf/config.hpp"
#include "bacf/eval.hpp"
#include "bacf/features.hpp"
#include "bacf/report.hpp"
#include "bacf/selftest.hpp"
#include "bacf/synthetic.hpp"

namespace {

using bacf::config::OutputFormat;
using bacf::config::RunConfig;

struct CommonFlags {
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::string> seq;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  bool print_config = false;
};

struct SyntheticFlags {
  bool use = false;
  bacf::synthetic::SyntheticSpec spec;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_file, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--set", f.sets, "override one config key (key=value), repeatable");
  cmd->add_option("--seq", f.seq, "OTB-style sequence directory (img/ + groundtruth_rect.txt)");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", f.seed, "seed for synthetic data and randomized checks");
  cmd->add_flag("--print-config", f.print_config, "print the resolved configuration and exit");
}

void add_synthetic(CLI::App* cmd, SyntheticFlags& s, bool with_switch) {
  if (with_switch)
    cmd->add_flag("--synthetic", s.use, "generate a textured-square sequence instead of --seq");
  cmd->add_option("--frames", s.spec.frames, "synthetic frame count")->check(CLI::Range(2, 100000));
  cmd->add_option("--scale-rate", s.spec.scale_rate, "synthetic per-frame size multiplier");
  cmd->add_option("--velocity-x", s.spec.velocity_x, "synthetic horizontal motion, px/frame");
  cmd->add_option("--velocity-y", s.spec.velocity_y, "synthetic vertical motion, px/frame");
  cmd->add_option("--noise", s.spec.noise_sigma, "synthetic noise sigma, gray levels");
  cmd->add_option("--target-size", s.spec.target_w, "synthetic square side, px")
      ->each([&s](const std::string&) { s.spec.target_h = s.spec.target_w; });
}

// Precedence: flag > file > default.
RunConfig resolve(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_file.empty()) bacf::config::load_file(cfg, f.config_file);
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw bacf::ParseError("--set expects key=value, got '" + kv + "'");
    bacf::config::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (f.seq) cfg.sequence = *f.seq;
  if (f.out) cfg.output = *f.out;
  if (f.format) bacf::config::apply_setting(cfg, "format", *f.format);
  if (f.seed) cfg.seed = *f.seed;
  cfg.params.validate();
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw bacf::IoError("cannot open output file: " + cfg.output);
  out << text;
  if (!out) throw bacf::IoError("write failed: " + cfg.output);
}

// Status lines go to stdout unless stdout carries the results.
std::ostream& status_stream(const RunConfig& cfg) {
  return cfg.output.empty() ? std::cerr : std::cout;
}

bacf::eval::OpeResult run_tracking(const RunConfig& cfg, SyntheticFlags synth) {
  if (synth.use) {
    synth.spec.seed = cfg.seed;
    const auto seq = bacf::synthetic::make_sequence(synth.spec);
    return bacf::eval::run_ope([&seq](std::size_t i) { return seq.frames[i]; }, seq.ground_truth,
                               cfg.params);
  }
  if (cfg.sequence.empty()) throw bacf::Error("no sequence given: pass --seq <dir> or --synthetic");
  return bacf::eval::run_ope(bacf::eval::load_otb_sequence(cfg.sequence), cfg.params);
}

int cmd_track(const RunConfig& cfg, const SyntheticFlags& synth, bool include_timing) {
  const auto result = run_tracking(cfg, synth);
  emit(cfg, cfg.format == OutputFormat::Json ? bacf::report::format_json(result, include_timing)
                                             : bacf::report::format_csv(result, include_timing));
  if (include_timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "fps=%.2f\n", result.fps);
    status_stream(cfg) << buf;
  }
  return 0;
}

int cmd_selftest(const RunConfig& cfg, bool corrupt) {
  bacf::selftest::SelftestOptions opt;
  opt.seed = cfg.seed;
  opt.max_samples = cfg.selftest_max_samples;
  opt.max_channels = cfg.selftest_max_channels;
  // Any T other than the window size breaks the Sherman-Morrison identity.
  if (corrupt) opt.sm_t_scale = 2.0;

  const auto results = bacf::selftest::run_all(opt);
  bool ok = true;
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  std::string text;
  for (const auto& r : results) {
    ok = ok && r.passed;
    const char* tag = r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL";
    text += std::string(tag) + " " + r.name + ": " + r.detail + "\n";
    doc.push_back({{"name", r.name}, {"status", tag}, {"detail", r.detail}});
  }
  text += ok ? "selftest passed\n" : "selftest FAILED\n";
  if (cfg.format == OutputFormat::Json) {
    emit(cfg, doc.dump(2) + "\n");
    status_stream(cfg) << (ok ? "selftest passed\n" : "selftest FAILED\n");
  } else {
    emit(cfg, text);
  }
  return ok ? 0 : 1;
}

int cmd_bench(const RunConfig& cfg, SyntheticFlags synth) {
  constexpr std::size_t kMinFrames = 100;
  if (cfg.sequence.empty()) synth.use = true;
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = run_tracking(cfg, synth);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::size_t tracked = result.boxes.size() - 1;
  if (tracked < kMinFrames)
    std::cerr << "warning: only " << tracked << " tracked frames; timings are noisy below "
              << kMinFrames << "\n";

  const auto& t = result.times;
  const double step_total = tracked / result.fps;
  const double per = 1000.0 / static_cast<double>(tracked);
  const int channels = bacf::features::channel_count(cfg.params.features);

  if (cfg.format == OutputFormat::Json) {
    nlohmann::ordered_json doc = {
        {"frames", tracked},
        {"channels", channels},
        {"admm_iters", cfg.params.admm_iters},
        {"ms_per_frame",
         {{"features", t.features * per},
          {"fft", t.fft * per},
          {"admm", t.admm * per},
          {"detection", t.detection * per},
          {"other", (step_total - t.total()) * per},
          {"total", step_total * per}}},
        {"fps", result.fps},
        {"wall_seconds", wall},
        {"mean_iou", result.metrics.mean_iou}};
    emit(cfg, doc.dump(2) + "\n");
    return 0;
  }
  char buf[512];
  std::string text;
  std::snprintf(buf, sizeof buf, "tracked frames  %zu\nchannels        %d\nadmm_iters      %d\n",
                tracked, channels, cfg.params.admm_iters);
  text += buf;
  text += "stage           ms/frame\n";
  const std::pair<const char*, double> rows[] = {{"features", t.features},
                                                 {"fft", t.fft},
                                                 {"admm", t.admm},
                                                 {"detection", t.detection},
                                                 {"other", step_total - t.total()},
                                                 {"total", step_total}};
  for (const auto& [name, secs] : rows) {
    std::snprintf(buf, sizeof buf, "  %-13s %8.3f\n", name, secs * per);
    text += buf;
  }
  std::snprintf(buf, sizeof buf, "end-to-end fps  %.2f\nmean iou        %.4f\nwall seconds    %.2f\n",
                result.fps, result.metrics.mean_iou, wall);
  text += buf;
  emit(cfg, text);
  return 0;
}

int cmd_synth(const RunConfig& cfg, SyntheticFlags synth) {
  if (cfg.output.empty()) throw bacf::Error("synth needs --out <dir>");
  synth.spec.seed = cfg.seed;
  bacf::synthetic::write_otb(bacf::synthetic::make_sequence(synth.spec), cfg.output);
  std::cout << "wrote " << synth.spec.frames << " frames to " << cfg.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Background-aware correlation filter tracker"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  CommonFlags common;
  SyntheticFlags track_synth, bench_synth, write_synth;
  bool include_timing = false;
  bool corrupt = false;

  auto* track = app.add_subcommand("track", "track a sequence and report boxes and metrics");
  add_common(track, common);
  add_synthetic(track, track_synth, true);
  track->add_flag("--include-timing", include_timing,
                  "add fps to the summary (makes output run-dependent)");

  auto* selftest = app.add_subcommand("selftest", "run the oracle equivalence checks");
  add_common(selftest, common);
  selftest->add_flag("--corrupt-normalization", corrupt)->group("");

  auto* bench = app.add_subcommand("bench", "per-stage timing over a synthetic or real sequence");
  add_common(bench, common);
  // 120 tracked frames with a 150 x 150 px search window.
  bench_synth.spec.frames = 121;
  bench_synth.spec.target_w = bench_synth.spec.target_h = 30.0;
  bench_synth.spec.velocity_x = 1.5;
  add_synthetic(bench, bench_synth, true);

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic OTB-style sequence to --out");
  add_common(synth_cmd, common);
  add_synthetic(synth_cmd, write_synth, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = resolve(common);
    if (common.print_config) {
      std::cout << bacf::config::to_text(cfg);
      return 0;
    }
    if (track->parsed()) return cmd_track(cfg, track_synth, include_timing);
    if (selftest->parsed()) return cmd_selftest(cfg, corrupt);
    if (bench->parsed()) return cmd_bench(cfg, bench_synth);
    return cmd_synth(cfg, write_synth);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
