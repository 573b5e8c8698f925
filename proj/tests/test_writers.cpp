/**
 * @file test_writers.cpp
 * @brief CSV, JSONL and SVG writers: round trips, escaping and byte stability.
 */
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include <json.hpp>

#include "rotwave/writers.hpp"

namespace rotwave::io {
namespace {

TEST(Writers, NumbersRoundTripWithSeventeenDigits) {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -0.0, 123456789.123456789}) {
    const auto s = num(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
  EXPECT_EQ(num(0.1), "0.10000000000000001");
  EXPECT_EQ(num(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(num(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Writers, CsvQuotesAndRejectsRaggedRows) {
  CsvTable t({"a", "b"});
  t.row({"plain", "with,comma"});
  t.row({"say \"hi\"", "x"});
  EXPECT_EQ(t.str(), "a,b\nplain,\"with,comma\"\n\"say \"\"hi\"\"\",x\n");
  EXPECT_THROW(t.row({"only"}), std::invalid_argument);
}

TEST(Writers, JsonRecordsParseAndKeepOrder) {
  const auto line = JsonRecord("wave")
                        .field("h", 0.25)
                        .field("bad", std::numeric_limits<double>::infinity())
                        .field("n", 3)
                        .field("ok", true)
                        .field("note", "quote \" and \\ slash")
                        .field("roots", std::vector<double>{1.0, 0.5})
                        .line();
  ASSERT_EQ(line.back(), '\n');
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["kind"], "wave");
  EXPECT_EQ(j["h"], 0.25);
  EXPECT_TRUE(j["bad"].is_null());
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["note"], "quote \" and \\ slash");
  EXPECT_EQ(j["roots"][1], 0.5);
  EXPECT_LT(line.find("\"kind\""), line.find("\"h\""));
}

TEST(Writers, SvgIsDeterministicAndClipsToTheWindow) {
  auto draw = [] {
    SvgCanvas c(-1.0, 1.0, -1.0, 1.0);
    c.frame("phi", "y");
    c.polyline({{-0.5, 0.0}, {0.0, 0.5}, {5.0, 5.0}, {0.5, 0.0}}, "blue", 1.0);
    c.segment({0.2, -1.0}, {0.2, 1.0}, "red", 1.0, true);
    c.marker({0.0, 0.0}, "cross", "black");
    c.marker({3.0, 0.0}, "cross", "black");
    c.text(10, 10, "a<b");
    return c.str();
  };
  const auto a = draw();
  EXPECT_EQ(a, draw());
  EXPECT_NE(a.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(a.find("a&lt;b"), std::string::npos);
  // Leaving the window breaks the path into two runs; the off-window marker is dropped.
  EXPECT_NE(a.find(" M"), std::string::npos);
  EXPECT_EQ(a.find("class=\"saddle\""), a.rfind("class=\"saddle\""));
  EXPECT_THROW(SvgCanvas(1.0, 1.0, 0.0, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace rotwave::io
