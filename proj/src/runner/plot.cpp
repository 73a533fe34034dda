// Copyright 2026 The starreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "runner/plot.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "core/error.hpp"

namespace starreg {

namespace {

constexpr double kWidth = 720.0, kHeight = 460.0;
constexpr double kLeft = 80.0, kRight = 150.0, kTop = 40.0, kBottom = 60.0;

const std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << v;
  return ss.str();
}

struct Range {
  double lo = INFINITY, hi = -INFINITY;
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-300) {
      const double pad = std::max(1e-12, std::abs(lo) * 0.05);
      lo -= pad;
      hi += pad;
    }
  }
  double map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

class Svg {
 public:
  Svg() {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  Svg& raw(const std::string& s) {
    out_ << s << '\n';
    return *this;
  }
  void line(double x1, double y1, double x2, double y2, const std::string& color, double width = 1.0,
            const std::string& cls = "") {
    out_ << "<line";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x1=\"" << num(x1, 6) << "\" y1=\"" << num(y1, 6) << "\" x2=\"" << num(x2, 6) << "\" y2=\""
         << num(y2, 6) << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& anchor = "middle", int rotate = 0,
            const std::string& cls = "") {
    out_ << "<text";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x=\"" << num(x, 6) << "\" y=\"" << num(y, 6) << "\" text-anchor=\"" << anchor << '"';
    if (rotate) out_ << " transform=\"rotate(" << rotate << ' ' << num(x, 6) << ' ' << num(y, 6) << ")\"";
    out_ << '>' << escape(s) << "</text>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& cls = "") {
    out_ << "<rect";
    if (!cls.empty()) out_ << " class=\"" << cls << '"';
    out_ << " x=\"" << num(x, 6) << "\" y=\"" << num(y, 6) << "\" width=\"" << num(w, 6) << "\" height=\""
         << num(h, 6) << "\" fill=\"" << fill << "\"/>\n";
  }
  std::string finish() { return out_.str() + "</svg>\n"; }

  static std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '&') o += "&amp;";
      else o += c;
    }
    return o;
  }

 private:
  std::ostringstream out_;
};

double px(const Range& r, double v) { return r.map(v, kLeft, kWidth - kRight); }
double py(const Range& r, double v) { return r.map(v, kHeight - kBottom, kTop); }

void axes(Svg& svg, const Range& xr, const Range& yr, const std::string& xlabel, const std::string& ylabel) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  svg.line(x0, y0, x1, y0, "black");
  svg.line(x0, y0, x0, y1, "black");
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0, yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    svg.line(px(xr, xv), y0, px(xr, xv), y0 + 5, "black");
    svg.text(px(xr, xv), y0 + 18, num(xv));
    svg.line(x0 - 5, py(yr, yv), x0, py(yr, yv), "black");
    svg.text(x0 - 8, py(yr, yv) + 4, num(yv), "end");
  }
  svg.text(0.5 * (x0 + x1), kHeight - 15, xlabel);
  svg.text(20, 0.5 * (y0 + y1), ylabel, "middle", -90);
}

std::string color_scale(double t) {
  static const std::array<std::array<double, 3>, 5> stops = {
      {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(t));
  const double f = t - i;
  char buf[8];
  int rgb[3];
  for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

int column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  require(it != t.columns.end(), ErrorCode::kColumnMismatch, "plot needs a '" + name + "' column");
  return static_cast<int>(it - t.columns.begin());
}

std::string line_plot(const Table& t) {
  require(t.columns.size() >= 2, ErrorCode::kColumnMismatch, "line plot needs at least two columns");
  Range xr, yr;
  for (const auto& r : t.rows) {
    xr.add(r[0]);
    for (std::size_t c = 1; c < r.size(); ++c) yr.add(r[c]);
  }
  xr.settle();
  yr.settle();
  Svg svg;
  axes(svg, xr, yr, t.columns[0], t.columns.size() == 2 ? t.columns[1] : "value");
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    const std::string color = kPalette[(c - 1) % kPalette.size()];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) svg.raw("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>");
      pts.clear();
    };
    for (const auto& r : t.rows) {
      if (!std::isfinite(r[0]) || !std::isfinite(r[c])) {
        flush();
        continue;
      }
      pts += (pts.empty() ? "" : " ") + num(px(xr, r[0]), 6) + "," + num(py(yr, r[c]), 6);
    }
    flush();
    const double ly = kTop + 16.0 * (c - 1);
    svg.line(kWidth - kRight + 12, ly, kWidth - kRight + 32, ly, color, 2.0);
    svg.text(kWidth - kRight + 38, ly + 4, t.columns[c], "start");
  }
  return svg.finish();
}

// Columns between the grid pair and the value column (for example a swept
// parameter) split the table into side-by-side panels sharing one colour scale.
std::string heatmap(const Table& t) {
  require(t.columns.size() >= 3, ErrorCode::kColumnMismatch, "heat map needs x, y and value columns");
  const std::size_t vc = t.columns.size() - 1;
  std::map<std::vector<double>, std::vector<const std::vector<double>*>> panels;
  for (const auto& r : t.rows) panels[std::vector<double>(r.begin() + 2, r.begin() + vc)].push_back(&r);

  std::map<double, int> xs, ys;
  for (const auto& r : t.rows) xs[r[0]], ys[r[1]];
  int i = 0;
  for (auto& [_, idx] : xs) idx = i++;
  i = 0;
  for (auto& [_, idx] : ys) idx = i++;
  for (const auto& [_, rows] : panels) {
    std::map<std::pair<double, double>, int> seen;
    for (const auto* r : rows) ++seen[{(*r)[0], (*r)[1]}];
    require(seen.size() == xs.size() * ys.size() && seen.size() == rows.size(), ErrorCode::kColumnMismatch,
            "heat map rows do not form a complete grid with one value per cell");
  }

  Range vr;
  for (const auto& r : t.rows) vr.add(r[vc]);
  if (t.columns[vc].find("entropy") != std::string::npos) vr.lo = 0.0, vr.hi = 1.0;
  vr.settle();

  Svg svg;
  const double gap = 16.0, y0 = kHeight - kBottom, bh = y0 - kTop;
  const double pw = (kWidth - kLeft - kRight - gap * (panels.size() - 1)) / panels.size();
  const double cw = pw / xs.size(), ch = bh / ys.size();
  double x0 = kLeft;
  for (const auto& [key, rows] : panels) {
    for (const auto* r : rows)
      svg.rect(x0 + cw * xs[(*r)[0]], y0 - ch * (ys[(*r)[1]] + 1), cw + 0.3, ch + 0.3,
               color_scale(vr.map((*r)[vc], 0.0, 1.0)), "cell");
    svg.line(x0, y0, x0 + pw, y0, "black");
    svg.line(x0, y0, x0, kTop, "black");
    svg.text(x0, y0 + 18, num(xs.begin()->first));
    svg.text(x0 + pw, y0 + 18, num(xs.rbegin()->first));
    std::string title;
    for (std::size_t c = 0; c < key.size(); ++c) title += (c ? ", " : "") + t.columns[2 + c] + " = " + num(key[c]);
    if (!title.empty()) svg.text(x0 + 0.5 * pw, kTop - 10, title);
    x0 += pw + gap;
  }
  svg.text(kLeft - 8, y0, num(ys.begin()->first), "end");
  svg.text(kLeft - 8, kTop + 8, num(ys.rbegin()->first), "end");
  svg.text(0.5 * (kLeft + kWidth - kRight), kHeight - 15, t.columns[0]);
  svg.text(20, 0.5 * (kTop + y0), t.columns[1], "middle", -90);
  const double bx = kWidth - kRight + 30;
  for (int k = 0; k < 50; ++k) svg.rect(bx, kTop + bh * (49 - k) / 50.0, 20, bh / 50.0 + 0.5, color_scale((k + 0.5) / 50.0));
  svg.text(bx + 26, kTop + 8, num(vr.hi), "start", 0, "legend-max");
  svg.text(bx + 26, kTop + bh, num(vr.lo), "start", 0, "legend-min");
  svg.text(bx + 10, kHeight - 15, t.columns[vc]);
  return svg.finish();
}

std::string sticks(const Table& t) {
  const int fc = column(t, "frequency_hz"), ac = column(t, "amplitude");
  Range xr, yr;
  yr.add(0.0);
  for (const auto& r : t.rows) {
    xr.add(r[fc]);
    yr.add(r[ac]);
  }
  const double pad = std::max(1.0, 0.08 * (xr.hi - xr.lo));
  xr.lo -= pad;
  xr.hi += pad;
  xr.settle();
  yr.settle();
  Svg svg;
  axes(svg, xr, yr, "frequency offset (Hz)", "amplitude");
  svg.line(kLeft, py(yr, 0.0), kWidth - kRight, py(yr, 0.0), "#888888");
  const int chc = static_cast<int>(std::find(t.columns.begin(), t.columns.end(), "channel") - t.columns.begin());
  for (const auto& r : t.rows) {
    const int channel = chc < static_cast<int>(t.columns.size()) ? static_cast<int>(r[chc]) : 0;
    svg.line(px(xr, r[fc]), py(yr, 0.0), px(xr, r[fc]), py(yr, r[ac]), kPalette[channel % kPalette.size()], 2.0,
             "stick");
  }
  return svg.finish();
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "line") return PlotKind::kLine;
  if (name == "heatmap") return PlotKind::kHeatmap;
  if (name == "sticks") return PlotKind::kSticks;
  fail(ErrorCode::kInvalidArgument, "unknown plot kind '" + name + "' (expected line, heatmap or sticks)");
}

Table read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), ErrorCode::kIoError, "cannot open '" + path + "'");
  Table t;
  t.name = std::filesystem::path(path).stem().string();
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.columns.empty()) {
      t.columns = cells;
      continue;
    }
    require(cells.size() == t.columns.size(), ErrorCode::kParseError,
            path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) + " fields");
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      require(res.ec == std::errc() && res.ptr == c.data() + c.size(), ErrorCode::kParseError,
              path + ":" + std::to_string(lineno) + ": '" + c + "' is not a number");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render_svg(const Table& table, PlotKind kind) {
  require(!table.columns.empty() && !table.rows.empty(), ErrorCode::kInvalidArgument, "cannot plot an empty result");
  for (const auto& r : table.rows)
    require(r.size() == table.columns.size(), ErrorCode::kColumnMismatch, "table is not rectangular");
  switch (kind) {
    case PlotKind::kLine: return line_plot(table);
    case PlotKind::kHeatmap: return heatmap(table);
    case PlotKind::kSticks: return sticks(table);
  }
  fail(ErrorCode::kInvalidArgument, "unknown plot kind");
}

std::string emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
  const std::string svg = render_svg(read_csv(csv_path), kind);
  const std::string out = svg_path.empty() ? std::filesystem::path(csv_path).replace_extension(".svg").string() : svg_path;
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  f << svg;
  require(f.good(), ErrorCode::kIoError, "cannot write '" + out + "'");
  return out;
}

}  // namespace starreg
