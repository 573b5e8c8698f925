#include "rotwave/writers.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace rotwave::io {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) { return std::isfinite(v) ? num(v) : "null"; }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::invalid_argument(fmt::format("CSV row has {} cells, header has {}", cells.size(), header_.size()));
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(r[i]);
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

JsonRecord::JsonRecord(const std::string& kind) { items_.emplace_back("kind", json_string(kind)); }

JsonRecord& JsonRecord::field(const std::string& key, double v) {
  items_.emplace_back(key, json_number(v));
  return *this;
}
JsonRecord& JsonRecord::field(const std::string& key, int v) {
  items_.emplace_back(key, std::to_string(v));
  return *this;
}
JsonRecord& JsonRecord::field(const std::string& key, std::size_t v) {
  items_.emplace_back(key, std::to_string(v));
  return *this;
}
JsonRecord& JsonRecord::field(const std::string& key, bool v) {
  items_.emplace_back(key, v ? "true" : "false");
  return *this;
}
JsonRecord& JsonRecord::field(const std::string& key, const std::string& v) {
  items_.emplace_back(key, json_string(v));
  return *this;
}
JsonRecord& JsonRecord::field(const std::string& key, const char* v) { return field(key, std::string(v)); }
JsonRecord& JsonRecord::field(const std::string& key, const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + json_number(v[i]);
  items_.emplace_back(key, s + "]");
  return *this;
}

std::string JsonRecord::line() const {
  std::string out = "{";
  for (std::size_t i = 0; i < items_.size(); ++i)
    out += (i ? "," : "") + json_string(items_[i].first) + ":" + items_[i].second;
  return out + "}\n";
}

SvgCanvas::SvgCanvas(double xmin, double xmax, double ymin, double ymax)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (!(xmax > xmin) || !(ymax > ymin)) throw std::invalid_argument("SVG window must have positive extent");
}

std::pair<double, double> SvgCanvas::map(PhasePoint p) const {
  const double u = kMargin + (p.phi - xmin_) / (xmax_ - xmin_) * (kWidth - 2 * kMargin);
  const double v = kHeight - kMargin - (p.y - ymin_) / (ymax_ - ymin_) * (kHeight - 2 * kMargin);
  return {u, v};
}

bool SvgCanvas::inside(PhasePoint p) const {
  return p.phi >= xmin_ && p.phi <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
}

void SvgCanvas::polyline(const std::vector<PhasePoint>& pts, const std::string& stroke, double width, bool dashed) {
  // Split into runs that stay inside the window.
  std::string d;
  bool pen = false;
  for (const auto& p : pts) {
    if (!inside(p) || !std::isfinite(p.phi) || !std::isfinite(p.y)) {
      pen = false;
      continue;
    }
    const auto [u, v] = map(p);
    d += fmt::format("{}{:.2f},{:.2f}", pen ? " L" : (d.empty() ? "M" : " M"), u, v);
    pen = true;
  }
  if (d.empty()) return;
  body_.push_back(fmt::format(R"(<path d="{}" fill="none" stroke="{}" stroke-width="{:.2f}"{}/>)", d, stroke, width,
                              dashed ? R"( stroke-dasharray="6,4")" : ""));
}

void SvgCanvas::segment(PhasePoint a, PhasePoint b, const std::string& stroke, double width, bool dashed) {
  const auto [u1, v1] = map(a);
  const auto [u2, v2] = map(b);
  body_.push_back(fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="{:.2f}"{}/>)",
                              u1, v1, u2, v2, stroke, width, dashed ? R"( stroke-dasharray="6,4")" : ""));
}

void SvgCanvas::circle(PhasePoint c, double radiusPx, const std::string& fill, const std::string& stroke) {
  const auto [u, v] = map(c);
  body_.push_back(
      fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="{}" stroke="{}"/>)", u, v, radiusPx, fill, stroke));
}

void SvgCanvas::marker(PhasePoint c, const std::string& shape, const std::string& color) {
  if (!inside(c)) return;
  const auto [u, v] = map(c);
  const double r = 5.0;
  if (shape == "cross") {
    body_.push_back(fmt::format(R"(<path class="saddle" d="M{:.2f},{:.2f} L{:.2f},{:.2f} M{:.2f},{:.2f} L{:.2f},{:.2f}" stroke="{}" stroke-width="2"/>)",
                                u - r, v - r, u + r, v + r, u - r, v + r, u + r, v - r, color));
  } else if (shape == "square") {
    body_.push_back(fmt::format(R"(<rect class="node" x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}"/>)",
                                u - r, v - r, 2 * r, 2 * r, color));
  } else if (shape == "triangle") {
    body_.push_back(fmt::format(R"(<path class="cusp" d="M{:.2f},{:.2f} L{:.2f},{:.2f} L{:.2f},{:.2f} Z" fill="{}"/>)", u,
                                v - r, u - r, v + r, u + r, v + r, color));
  } else if (shape == "diamond") {
    body_.push_back(fmt::format(R"(<path class="degenerate" d="M{:.2f},{:.2f} L{:.2f},{:.2f} L{:.2f},{:.2f} L{:.2f},{:.2f} Z" fill="{}"/>)",
                                u, v - r, u + r, v, u, v + r, u - r, v, color));
  } else {
    body_.push_back(fmt::format(R"(<circle class="center" cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="white" stroke="{}" stroke-width="2"/>)",
                                u, v, r, color));
  }
}

void SvgCanvas::text(double xPx, double yPx, const std::string& s, int sizePx) {
  body_.push_back(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-family="monospace" font-size="{}">{}</text>)", xPx, yPx,
                              sizePx, xml_escape(s)));
}

void SvgCanvas::frame(const std::string& xLabel, const std::string& yLabel) {
  body_.push_back(fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="black"/>)",
                              kMargin, kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin));
  text(kWidth / 2, kHeight - 15, xLabel, 14);
  text(10, kHeight / 2, yLabel, 14);
  text(kMargin, kHeight - kMargin + 18, fmt::format("{:.4g}", xmin_), 11);
  text(kWidth - kMargin - 40, kHeight - kMargin + 18, fmt::format("{:.4g}", xmax_), 11);
  text(5, kHeight - kMargin, fmt::format("{:.4g}", ymin_), 11);
  text(5, kMargin + 4, fmt::format("{:.4g}", ymax_), 11);
}

std::string SvgCanvas::str() const {
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0f} {:.0f}\" width=\"{:.0f}\" height=\"{:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += R"(<rect x="0" y="0" width="800" height="600" fill="white"/>)";
  out += '\n';
  for (const auto& b : body_) out += b + '\n';
  return out + "</svg>\n";
}

}  // namespace rotwave::io
