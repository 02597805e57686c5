#include "persuasion/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace persuasion {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 20.0, kBottom = 45.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Mapper {
  double x_min, x_max, y_min, y_max;
  double px(double x) const {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom -
           (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  }
};

void polyline(std::ostringstream& out, const Mapper& map,
              const std::vector<SweepRow>& rows, double SweepRow::*field,
              const char* color, const char* dash) {
  out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
  if (dash[0]) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out << ' ';
    out << num(map.px(rows[i].prior)) << ',' << num(map.py(rows[i].*field));
  }
  out << "\"/>\n";
}

void markers(std::ostringstream& out, const Mapper& map,
             const std::vector<SweepRow>& rows, double SweepRow::*field,
             const char* color) {
  for (const SweepRow& r : rows)
    out << "  <circle cx=\"" << num(map.px(r.prior)) << "\" cy=\""
        << num(map.py(r.*field)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
}

}  // namespace

std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const std::optional<ChordHighlight>& chord) {
  if (rows.empty()) fail(ErrorCode::InputError, "svg: no data rows");

  double x_min = rows.front().prior, x_max = rows.front().prior;
  double y_min = rows.front().sender_value, y_max = y_min;
  for (const SweepRow& r : rows) {
    x_min = std::min(x_min, r.prior);
    x_max = std::max(x_max, r.prior);
    for (double v : {r.sender_value, r.cav_unconstrained, r.cav_constrained}) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.05;
    x_max += 0.05;
  }
  const double pad = std::max(1e-6, (y_max - y_min) * 0.08);
  Mapper map{x_min, x_max, y_min - pad, y_max + pad};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "width=\"800\" height=\"500\">\n";
  out << "  <rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

  // Axes and x ticks every 0.1.
  out << "  <line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom)
      << "\" x2=\"" << num(kWidth - kRight) << "\" y2=\"" << num(kHeight - kBottom)
      << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out << "  <line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kHeight - kBottom)
      << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (int t = 0; t <= 10; ++t) {
    const double x = x_min + (x_max - x_min) * t / 10.0;
    out << "  <line x1=\"" << num(map.px(x)) << "\" y1=\"" << num(kHeight - kBottom)
        << "\" x2=\"" << num(map.px(x)) << "\" y2=\"" << num(kHeight - kBottom + 5)
        << "\" stroke=\"black\"/>\n";
    char label[32];
    std::snprintf(label, sizeof(label), "%.2f", x);
    out << "  <text x=\"" << num(map.px(x)) << "\" y=\"" << num(kHeight - kBottom + 20)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double y = map.y_min + (map.y_max - map.y_min) * t / 4.0;
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", y);
    out << "  <line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(map.py(y))
        << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(map.py(y))
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << num(kLeft - 9) << "\" y=\"" << num(map.py(y) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << label << "</text>\n";
  }

  if (rows.size() == 1) {
    markers(out, map, rows, &SweepRow::sender_value, "#1f77b4");
    markers(out, map, rows, &SweepRow::cav_unconstrained, "#888888");
    markers(out, map, rows, &SweepRow::cav_constrained, "#d62728");
  } else {
    polyline(out, map, rows, &SweepRow::sender_value, "#1f77b4", "");
    polyline(out, map, rows, &SweepRow::cav_unconstrained, "#888888", "6,4");
    polyline(out, map, rows, &SweepRow::cav_constrained, "#d62728", "");
  }

  if (chord) {
    out << "  <line x1=\"" << num(map.px(chord->x1)) << "\" y1=\""
        << num(map.py(chord->y1)) << "\" x2=\"" << num(map.px(chord->x2))
        << "\" y2=\"" << num(map.py(chord->y2))
        << "\" stroke=\"#2ca02c\" stroke-width=\"2\" stroke-dasharray=\"4,4\"/>\n";
  }

  const char* const legend[3][2] = {{"#1f77b4", "v_s"},
                                    {"#888888", "cav unconstrained"},
                                    {"#d62728", "cav constrained"}};
  for (int i = 0; i < 3; ++i) {
    const double y = kTop + 16.0 * i + 8.0;
    out << "  <line x1=\"" << num(kLeft + 10) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kLeft + 34) << "\" y2=\"" << num(y) << "\" stroke=\"" << legend[i][0]
        << "\" stroke-width=\"3\"/>\n";
    out << "  <text x=\"" << num(kLeft + 40) << "\" y=\"" << num(y + 4)
        << "\" font-size=\"12\">" << legend[i][1] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace persuasion
