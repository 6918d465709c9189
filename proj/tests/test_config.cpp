#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "bacf/config.hpp"
#include "bacf/report.hpp"

namespace bacf {
namespace {

using namespace config;
namespace fs = std::filesystem;

TEST(Config, TextRoundTrip) {
  RunConfig a;
  apply_setting(a, "lambda", "0.1");
  apply_setting(a, "scale_step", "1.0234567890123");
  apply_setting(a, "features", "gradient");
  apply_setting(a, "format", "json");
  const fs::path file = fs::temp_directory_path() / "bacf_config_roundtrip.cfg";
  std::ofstream(file) << to_text(a);
  RunConfig b;
  load_file(b, file);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(b.format, OutputFormat::Json);
  EXPECT_EQ(to_text(a), to_text(b));
}

TEST(Config, CommentsAndWhitespace) {
  const fs::path file = fs::temp_directory_path() / "bacf_config_comments.cfg";
  std::ofstream(file) << "# tuned\n\n  eta =  0.02   # faster\nnum_scales=3\n";
  RunConfig c;
  load_file(c, file);
  EXPECT_EQ(c.params.eta, 0.02);
  EXPECT_EQ(c.params.num_scales, 3);
}

TEST(Config, UnknownKeyNamed) {
  RunConfig c;
  try {
    apply_setting(c, "lamda", "1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'lamda'"), std::string::npos);
  }
  const fs::path file = fs::temp_directory_path() / "bacf_config_bad.cfg";
  std::ofstream(file) << "eta = 0.1\nwindow = 3\n";
  try {
    load_file(c, file);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'window'"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
}

TEST(Config, BadValuesRejected) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "cell", "4.5"), ParseError);
  EXPECT_THROW(apply_setting(c, "lambda", "abc"), ParseError);
  EXPECT_THROW(apply_setting(c, "format", "xml"), ParseError);
  EXPECT_THROW(apply_setting(c, "features", "cnn"), ParseError);
}

TEST(Config, ShortestRoundTripDoubles) {
  EXPECT_EQ(format_double(0.001), "0.001");
  EXPECT_EQ(format_double(1000.0), "1000");
  EXPECT_EQ(format_double(0.0125), "0.0125");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(Config, DefaultsPrinted) {
  const std::string text = to_text(RunConfig{});
  for (const char* line : {"lambda = 0.001\n", "admm_iters = 2\n", "mu0 = 1\n", "beta = 10\n",
                           "mu_max = 1000\n", "eta = 0.0125\n", "label_bandwidth_divisor = 16\n",
                           "cell = 4\n", "num_scales = 5\n", "scale_step = 1.01\n"})
    EXPECT_NE(text.find(line), std::string::npos) << line;
}

eval::OpeResult sample_result() {
  eval::OpeResult r;
  r.boxes = {{0, 0, 10, 10}, {1.5, 2.25, 10, 10}};
  r.scores = {0.0, 0.75};
  r.metrics = eval::evaluate(r.boxes, std::vector<BoundingBox>{{0, 0, 10, 10}, {1, 2, 10, 10}});
  r.fps = 123.0;
  return r;
}

TEST(Report, CsvLayout) {
  const auto r = sample_result();
  const std::string csv = report::format_csv(r, false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "frame,x,y,w,h,score");
  EXPECT_NE(csv.find("\n1,1.0000,1.0000,10.0000,10.0000,0.000000\n"), std::string::npos);
  EXPECT_NE(csv.find("\n2,2.5000,3.2500,10.0000,10.0000,0.750000\n"), std::string::npos);
  EXPECT_NE(csv.find("#summary,auc="), std::string::npos);
  EXPECT_NE(csv.find(",frames=2\n"), std::string::npos);
  EXPECT_EQ(csv.find("fps"), std::string::npos);
  EXPECT_NE(report::format_csv(r, true).find(",fps=123.000"), std::string::npos);
}

TEST(Report, JsonCarriesSameData) {
  const auto r = sample_result();
  const auto doc = nlohmann::json::parse(report::format_json(r, false));
  ASSERT_EQ(doc["boxes"].size(), 2u);
  EXPECT_EQ(doc["boxes"][1]["x"], 2.5);
  EXPECT_EQ(doc["boxes"][1]["frame"], 2);
  EXPECT_EQ(doc["summary"]["frames"], 2);
  EXPECT_DOUBLE_EQ(doc["summary"]["auc"].get<double>(), r.metrics.auc);
  EXPECT_FALSE(doc["summary"].contains("fps"));
}

}  // namespace
}  // namespace bacf
