/**
 * @file writers.hpp
 * @brief Byte-stable text writers: CSV and JSONL with 17 significant digits, and a minimal SVG canvas.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rotwave/field.hpp"

namespace rotwave::io {

/// Shortest form that is still 17 significant digits ("nan"/"inf" spelled out).
[[nodiscard]] std::string num(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Appends a row; throws std::invalid_argument on a column-count mismatch.
  void row(std::vector<std::string> cells);
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// One JSON object per line; keys keep insertion order.
class JsonRecord {
 public:
  explicit JsonRecord(const std::string& kind);

  JsonRecord& field(const std::string& key, double v);
  JsonRecord& field(const std::string& key, int v);
  JsonRecord& field(const std::string& key, std::size_t v);
  JsonRecord& field(const std::string& key, bool v);
  JsonRecord& field(const std::string& key, const std::string& v);
  JsonRecord& field(const std::string& key, const char* v);
  JsonRecord& field(const std::string& key, const std::vector<double>& v);
  [[nodiscard]] std::string line() const;

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

/// Fixed 800x600 viewBox; world coordinates map linearly with y pointing up.
class SvgCanvas {
 public:
  SvgCanvas(double xmin, double xmax, double ymin, double ymax);

  void polyline(const std::vector<PhasePoint>& pts, const std::string& stroke, double width, bool dashed = false);
  void segment(PhasePoint a, PhasePoint b, const std::string& stroke, double width, bool dashed = false);
  void circle(PhasePoint c, double radiusPx, const std::string& fill, const std::string& stroke);
  void marker(PhasePoint c, const std::string& shape, const std::string& color);
  void text(double xPx, double yPx, const std::string& s, int sizePx = 14);
  void frame(const std::string& xLabel, const std::string& yLabel);
  [[nodiscard]] bool inside(PhasePoint p) const;
  [[nodiscard]] std::string str() const;

  static constexpr double kWidth = 800.0;
  static constexpr double kHeight = 600.0;
  static constexpr double kMargin = 50.0;

 private:
  [[nodiscard]] std::pair<double, double> map(PhasePoint p) const;

  double xmin_, xmax_, ymin_, ymax_;
  std::vector<std::string> body_;
};

}  // namespace rotwave::io
