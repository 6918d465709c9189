#include "bacf/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace bacf::report {

namespace {

// OTB files count pixels from 1.
constexpr double kOtbOrigin = 1.0;

}  // namespace

std::string format_csv(const eval::OpeResult& r, bool include_timing) {
  std::string out = "frame,x,y,w,h,score\n";
  char buf[256];
  for (std::size_t i = 0; i < r.boxes.size(); ++i) {
    const BoundingBox& b = r.boxes[i];
    std::snprintf(buf, sizeof buf, "%zu,%.4f,%.4f,%.4f,%.4f,%.6f\n", i + 1, b.x + kOtbOrigin,
                  b.y + kOtbOrigin, b.w, b.h, r.scores[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "#summary,auc=%.6f,success_at_0.5=%.6f,mean_iou=%.6f,frames=%zu",
                r.metrics.auc, r.metrics.success_at_half, r.metrics.mean_iou, r.boxes.size());
  out += buf;
  if (include_timing) {
    std::snprintf(buf, sizeof buf, ",fps=%.3f", r.fps);
    out += buf;
  }
  out += '\n';
  return out;
}

std::string format_json(const eval::OpeResult& r, bool include_timing) {
  nlohmann::ordered_json boxes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.boxes.size(); ++i) {
    const BoundingBox& b = r.boxes[i];
    boxes.push_back({{"frame", i + 1},
                     {"x", b.x + kOtbOrigin},
                     {"y", b.y + kOtbOrigin},
                     {"w", b.w},
                     {"h", b.h},
                     {"score", r.scores[i]}});
  }
  nlohmann::ordered_json summary = {{"auc", r.metrics.auc},
                                    {"success_at_0.5", r.metrics.success_at_half},
                                    {"mean_iou", r.metrics.mean_iou},
                                    {"frames", r.boxes.size()}};
  if (include_timing) summary["fps"] = r.fps;
  nlohmann::ordered_json doc = {{"boxes", std::move(boxes)}, {"summary", std::move(summary)}};
  return doc.dump(2) + "\n";
}

}  // namespace bacf::report
