#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qmlp::harness {

namespace {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

// One panel: axes, ticks, polylines, legend.
void draw_panel(std::ostream& out, const std::vector<Series>& series, double x0, double y0,
                double width, double height, const std::string& x_label,
                const std::string& y_label) {
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const Series& s : series) {
    for (double v : s.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (double v : s.y) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double left = x0 + 60, right = x0 + width - 15;
  const double top = y0 + 15, bottom = y0 + height - 40;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  auto py = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

  out << "<rect x='" << left << "' y='" << top << "' width='" << (right - left) << "' height='"
      << (bottom - top) << "' fill='none' stroke='#333'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_min + (x_max - x_min) * t / 4.0;
    const double yv = y_min + (y_max - y_min) * t / 4.0;
    out << "<line x1='" << px(xv) << "' y1='" << bottom << "' x2='" << px(xv) << "' y2='"
        << (bottom + 4) << "' stroke='#333'/>\n";
    out << "<text x='" << px(xv) << "' y='" << (bottom + 16)
        << "' font-size='10' text-anchor='middle'>" << fmt(xv) << "</text>\n";
    out << "<line x1='" << (left - 4) << "' y1='" << py(yv) << "' x2='" << left << "' y2='"
        << py(yv) << "' stroke='#333'/>\n";
    out << "<text x='" << (left - 6) << "' y='" << (py(yv) + 3)
        << "' font-size='10' text-anchor='end'>" << fmt(yv) << "</text>\n";
  }
  out << "<text x='" << (left + (right - left) / 2) << "' y='" << (bottom + 32)
      << "' font-size='12' text-anchor='middle'>" << x_label << "</text>\n";
  out << "<text x='" << (x0 + 14) << "' y='" << (top + (bottom - top) / 2)
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 " << (x0 + 14) << " "
      << (top + (bottom - top) / 2) << ")'>" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      out << px(s.x[k]) << "," << py(s.y[k]) << " ";
    }
    out << "'/>\n";
    const double lx = left + 8;
    const double ly = top + 14 + 14 * static_cast<double>(i);
    out << "<line x1='" << lx << "' y1='" << ly << "' x2='" << (lx + 18) << "' y2='" << ly
        << "' stroke='" << color << "' stroke-width='2'/>\n";
    out << "<text x='" << (lx + 24) << "' y='" << (ly + 3) << "' font-size='10'>" << s.name
        << "</text>\n";
  }
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::string& header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  if (!std::getline(in, header)) throw std::runtime_error("csv file is empty: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error("csv file has no data rows: " + path);
  return rows;
}

}  // namespace

void cmd_plot(const std::string& csv_path, const std::string& out_svg) {
  std::string header;
  const auto rows = read_csv(csv_path, header);

  std::vector<Series> loss_series;
  std::vector<Series> acc_series;
  std::string x_label;

  if (header == "epoch,loss,accuracy") {
    x_label = "epoch";
    Series loss{"loss", {}, {}};
    Series acc{"accuracy", {}, {}};
    for (const auto& row : rows) {
      if (row.size() != 3) throw std::runtime_error("malformed history row in " + csv_path);
      loss.x.push_back(std::stod(row[0]));
      loss.y.push_back(std::stod(row[1]));
      acc.x.push_back(std::stod(row[0]));
      acc.y.push_back(std::stod(row[2]));
    }
    loss_series.push_back(std::move(loss));
    acc_series.push_back(std::move(acc));
  } else if (header == "model_id,scale,loss,accuracy") {
    x_label = "noise scale";
    std::map<std::string, Series> loss_by_model;
    std::map<std::string, Series> acc_by_model;
    for (const auto& row : rows) {
      if (row.size() != 4) throw std::runtime_error("malformed sweep row in " + csv_path);
      auto& loss = loss_by_model[row[0]];
      auto& acc = acc_by_model[row[0]];
      loss.name = row[0];
      acc.name = row[0];
      loss.x.push_back(std::stod(row[1]));
      loss.y.push_back(std::stod(row[2]));
      acc.x.push_back(std::stod(row[1]));
      acc.y.push_back(std::stod(row[3]));
    }
    for (auto& [_, s] : loss_by_model) loss_series.push_back(std::move(s));
    for (auto& [_, s] : acc_by_model) acc_series.push_back(std::move(s));
  } else {
    throw std::runtime_error("unrecognized csv header: " + header);
  }

  const double width = 860, panel_height = 320;
  std::ofstream out(out_svg);
  if (!out) throw std::runtime_error("cannot write svg file: " + out_svg);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='"
      << (2 * panel_height) << "' font-family='sans-serif'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  draw_panel(out, loss_series, 0, 0, width, panel_height, x_label, "loss");
  draw_panel(out, acc_series, 0, panel_height, width, panel_height, x_label, "accuracy");
  out << "</svg>\n";
}

}  // namespace qmlp::harness
