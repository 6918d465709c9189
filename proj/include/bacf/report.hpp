#pragma once

#include <string>

#include "bacf/eval.hpp"

namespace bacf::report {

/// "frame,x,y,w,h,score" rows with 1-indexed frames and OTB (1-indexed)
/// coordinates, then one "#summary,..." line. FPS is added only when
/// `include_timing` is set, so default output is byte-reproducible.
std::string format_csv(const eval::OpeResult& r, bool include_timing);

/// The same data as {"boxes": [...], "summary": {...}}.
std::string format_json(const eval::OpeResult& r, bool include_timing);

}  // namespace bacf::report
