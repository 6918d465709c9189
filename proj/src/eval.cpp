#include "bacf/eval.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <numeric>
#include <regex>

namespace bacf::eval {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  const double inter = (iw > 0 && ih > 0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

SuccessCurve success_curve(std::span<const double> ious) {
  if (ious.empty()) throw Error("success_curve: no overlaps given");
  SuccessCurve c;
  for (int i = 0; i < kNumThresholds; ++i) {
    c.thresholds[i] = i / 20.0;
    const auto hits = std::count_if(ious.begin(), ious.end(),
                                    [&](double v) { return v > c.thresholds[i]; });
    c.rates[i] = static_cast<double>(hits) / static_cast<double>(ious.size());
  }
  return c;
}

double auc(const SuccessCurve& c) {
  return std::accumulate(c.rates.begin(), c.rates.end(), 0.0) / kNumThresholds;
}

double success_rate_at_half(std::span<const double> ious) {
  if (ious.empty()) throw Error("success_rate_at_half: no overlaps given");
  const auto hits = std::count_if(ious.begin(), ious.end(), [](double v) { return v > 0.5; });
  return static_cast<double>(hits) / static_cast<double>(ious.size());
}

BoundingBox parse_otb_line(std::string_view line, int line_no) {
  std::array<double, 4> v{};
  int n = 0;
  std::size_t pos = 0;
  auto is_sep = [](char ch) { return ch == ',' || ch == '\t' || ch == ' ' || ch == '\r'; };
  while (pos < line.size()) {
    while (pos < line.size() && is_sep(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && !is_sep(line[end])) ++end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
    if (ec != std::errc() || ptr != line.data() + end || n == 4)
      throw ParseError("ground truth line " + std::to_string(line_no) +
                       ": expected 4 numbers, got '" + std::string(line) + "'");
    v[n++] = value;
    pos = end;
  }
  if (n != 4)
    throw ParseError("ground truth line " + std::to_string(line_no) + ": expected 4 numbers, got " +
                     std::to_string(n));
  return BoundingBox{v[0] - 1.0, v[1] - 1.0, v[2], v[3]};
}

std::vector<BoundingBox> load_ground_truth(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open ground truth file: " + file.string());
  std::vector<BoundingBox> boxes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    boxes.push_back(parse_otb_line(line, line_no));
  }
  return boxes;
}

Sequence load_otb_sequence(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Sequence seq;
  seq.name = dir.filename().string();
  if (seq.name.empty()) seq.name = dir.parent_path().filename().string();

  fs::path gt = dir / "groundtruth_rect.txt";
  if (!fs::exists(gt)) gt = dir / "groundtruth.txt";
  if (!fs::exists(gt)) throw IoError("missing ground truth file: " + (dir / "groundtruth_rect.txt").string());
  const fs::path img = dir / "img";
  if (!fs::is_directory(img)) throw IoError("missing frame directory: " + img.string());

  static const std::regex number(R"((\d+))");
  std::vector<std::pair<long, fs::path>> frames;
  for (const auto& entry : fs::directory_iterator(img)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".jpg" && ext != ".jpeg" && ext != ".png" && ext != ".ppm" && ext != ".pgm" &&
        ext != ".bmp")
      continue;
    const std::string stem = entry.path().stem().string();
    std::smatch m;
    if (!std::regex_search(stem, m, number)) continue;
    frames.emplace_back(std::stol(m[1].str()), entry.path());
  }
  std::sort(frames.begin(), frames.end());
  for (auto& f : frames) seq.frames.push_back(std::move(f.second));

  seq.ground_truth = load_ground_truth(gt);
  if (seq.frames.size() != seq.ground_truth.size())
    throw Error("frame count (" + std::to_string(seq.frames.size()) +
                ") does not match ground truth count (" + std::to_string(seq.ground_truth.size()) +
                ") in " + dir.string());
  if (seq.frames.size() < 2) throw Error("sequence needs at least 2 frames: " + dir.string());
  const auto& first = seq.ground_truth.front();
  if (!(first.w > 0 && first.h > 0)) throw Error("first ground truth box is degenerate");
  return seq;
}

Metrics evaluate(std::span<const BoundingBox> predicted, std::span<const BoundingBox> truth) {
  if (predicted.size() != truth.size()) throw DimensionError("evaluate: box count mismatch");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) m.ious.push_back(iou(predicted[i], truth[i]));
  m.curve = success_curve(m.ious);
  m.auc = auc(m.curve);
  m.success_at_half = success_rate_at_half(m.ious);
  m.mean_iou = std::accumulate(m.ious.begin(), m.ious.end(), 0.0) / static_cast<double>(m.ious.size());
  return m;
}

OpeResult run_ope(const FrameLoader& load, std::span<const BoundingBox> truth,
                  const core::BacfParams& params) {
  if (truth.size() < 2) throw Error("run_ope: sequence needs at least 2 frames");
  OpeResult out;
  auto frame_at = [&](std::size_t i) {
    try {
      return load(i);
    } catch (const std::exception& e) {
      throw IoError("frame " + std::to_string(i + 1) + ": " + e.what());
    }
  };

  detect::TrackerState state = detect::init(frame_at(0), truth.front(), params);
  out.boxes.push_back(truth.front());
  out.scores.push_back(0.0);

  double step_seconds = 0.0;
  for (std::size_t i = 1; i < truth.size(); ++i) {
    const ImagePatch frame = frame_at(i);
    const auto t0 = std::chrono::steady_clock::now();
    const detect::StepResult r = detect::step(state, frame, &out.times);
    step_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.boxes.push_back(r.box);
    out.scores.push_back(r.score);
  }
  out.fps = step_seconds > 0 ? static_cast<double>(truth.size() - 1) / step_seconds : 0.0;
  out.metrics = evaluate(out.boxes, truth);
  return out;
}

OpeResult run_ope(const Sequence& seq, const core::BacfParams& params) {
  return run_ope([&](std::size_t i) { return load_image(seq.frames.at(i)); }, seq.ground_truth,
                 params);
}

}  // namespace bacf::eval
