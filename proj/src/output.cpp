#include "qes/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qes/error.hpp"

namespace qes {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ',';
    out += cells[k];
  }
  out += '\n';
  return out;
}

std::string roots_csv(const std::vector<TruncationSolution>& family) {
  std::string out = csv_line({"i", "root", "W", "nodes"});
  for (const auto& sol : family)
    out += csv_line({std::to_string(sol.i), format_number(sol.root), format_number(sol.W),
                     std::to_string(node_count(exact_wavefunction(sol)))});
  return out;
}

std::string sweep_csv(const SweepTable& table) {
  if (table.rows.empty()) throw InvalidArgument("empty sweep");
  const auto levels = table.rows.front().W.size();
  const bool mirror = !table.rows.front().mirror_W.empty();
  std::vector<std::string> header{"grid_value"};
  for (std::size_t k = 0; k < levels; ++k) header.push_back("W_" + std::to_string(k));
  if (mirror)
    for (std::size_t k = 0; k < levels; ++k) header.push_back("mirror_W_" + std::to_string(k));
  header.push_back("converged");
  std::string out = csv_line(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{format_number(row.x)};
    for (double w : row.W) cells.push_back(format_number(w));
    for (double w : row.mirror_W) cells.push_back(format_number(w));
    cells.push_back(row.converged && row.mirror_converged ? "1" : "0");
    out += csv_line(cells);
  }
  return out;
}

std::string overlay_csv(const std::vector<TruncationSolution>& overlay) {
  std::string out = csv_line({"n", "i", "root", "W", "nodes"});
  for (const auto& sol : overlay)
    out += csv_line({std::to_string(sol.n), std::to_string(sol.i), format_number(sol.root),
                     format_number(sol.W), std::to_string(node_count(exact_wavefunction(sol)))});
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) throw InvalidArgument("tick range must be increasing");
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 5.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> ticks;
  const long long first = static_cast<long long>(std::ceil(lo / step - 1e-9));
  const long long last = static_cast<long long>(std::floor(hi / step + 1e-9));
  for (long long k = first; k <= last; ++k) ticks.push_back(k == 0 ? 0.0 : k * step);
  return ticks;
}

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const Frame& f,
                     const char* attrs) {
  std::string out = "<polyline fill=\"none\" clip-path=\"url(#plot)\" ";
  out += attrs;
  out += " points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k) out += ' ';
    out += fmt(f.px(pts[k].first)) + ',' + fmt(f.py(pts[k].second));
  }
  out += "\"/>\n";
  return out;
}

}  // namespace

std::string sweep_svg(const SweepTable& table, const FigureStyle& style) {
  if (table.rows.size() < 2) throw InvalidArgument("figure needs at least two grid points");
  const char* var = table.mode == SolveFor::a ? "a" : "b";

  double lo = 0.0, hi = 0.0;
  bool have = false;
  for (const auto& sol : table.overlay) {
    lo = have ? std::min(lo, sol.W) : sol.W;
    hi = have ? std::max(hi, sol.W) : sol.W;
    have = true;
  }
  if (!have) {
    lo = table.rows.front().W.front();
    hi = table.rows.front().W.back();
    for (const auto& row : table.rows) {
      lo = std::min(lo, row.W.front());
      hi = std::max(hi, row.W.back());
    }
  }
  const double pad = std::max(1.0, 0.15 * (hi - lo));
  Frame f{table.rows.front().x, table.rows.back().x, style.w_min.value_or(lo - pad),
          style.w_max.value_or(hi + pad)};
  if (!(f.y1 > f.y0)) throw InvalidArgument("empty vertical window");

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
         "height=\"600\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop)
      << "\" width=\"" << fmt(kWidth - kLeft - kRight) << "\" height=\""
      << fmt(kHeight - kTop - kBottom) << "\"/></clipPath></defs>\n";
  if (!style.title.empty())
    svg << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << style.title
        << "</text>\n";

  // Axes and ticks.
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(kWidth - kLeft - kRight) << "\" height=\"" << fmt(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(f.x0, f.x1)) {
    const double x = f.px(t), y = kHeight - kBottom;
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(y - 6) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y + 20) << "\" text-anchor=\"middle\">"
        << label(t) << "</text>\n";
  }
  for (double t : nice_ticks(f.y0, f.y1)) {
    const double x = kLeft, y = f.py(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(x + 6) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(x - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
        << label(t) << "</text>\n";
  }
  svg << "<text x=\"" << fmt((kLeft + kWidth - kRight) / 2) << "\" y=\"" << fmt(kHeight - 15)
      << "\" text-anchor=\"middle\" font-style=\"italic\">" << var << "</text>\n";
  svg << "<text x=\"22\" y=\"" << fmt((kTop + kHeight - kBottom) / 2)
      << "\" text-anchor=\"middle\" font-style=\"italic\" transform=\"rotate(-90 22 "
      << fmt((kTop + kHeight - kBottom) / 2) << ")\">W</text>\n";

  const auto levels = table.rows.front().W.size();
  const bool mirror = !table.rows.front().mirror_W.empty();
  for (std::size_t k = 0; k < levels; ++k) {
    std::vector<std::pair<double, double>> direct, mirrored;
    for (const auto& row : table.rows) {
      direct.emplace_back(row.x, row.W[k]);
      if (mirror) mirrored.emplace_back(row.x, row.mirror_W[k]);
    }
    svg << polyline(direct, f, "stroke=\"blue\" stroke-width=\"1.5\"");
    if (mirror)
      svg << polyline(mirrored, f, "stroke=\"green\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"");
  }

  if (style.locus_order >= 0) {
    const double n = style.locus_order;
    std::vector<std::pair<double, double>> locus;
    if (table.mode == SolveFor::a) {
      const double w = truncation_W(style.locus_order, table.s, table.fixed);
      locus = {{f.x0, w}, {f.x1, w}};
    } else {
      for (int q = 0; q <= 200; ++q) {
        const double x = f.x0 + (f.x1 - f.x0) * q / 200.0;
        locus.emplace_back(x, 2.0 * (n + table.s + 1.0) - x * x / 4.0);
      }
    }
    svg << polyline(locus, f, "stroke=\"red\" stroke-width=\"1\" stroke-dasharray=\"3 3\"");
  }

  for (const auto& sol : table.overlay) {
    if (sol.root < f.x0 || sol.root > f.x1 || sol.W < f.y0 || sol.W > f.y1) continue;
    svg << "<circle cx=\"" << fmt(f.px(sol.root)) << "\" cy=\"" << fmt(f.py(sol.W))
        << "\" r=\"3.5\" fill=\"red\"/>\n";
  }

  // Legend.
  const double lx = kWidth - kRight - 190, ly = kTop + 12;
  svg << "<rect x=\"" << fmt(lx - 10) << "\" y=\"" << fmt(ly - 6) << "\" width=\"190\" height=\""
      << (mirror ? 84 : 64) << "\" fill=\"white\" stroke=\"gray\"/>\n";
  double row_y = ly + 8;
  svg << "<circle cx=\"" << fmt(lx + 12) << "\" cy=\"" << fmt(row_y) << "\" r=\"3.5\" fill=\"red\"/>"
      << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(row_y + 4)
      << "\">truncation points</text>\n";
  row_y += 20;
  svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(row_y) << "\" x2=\"" << fmt(lx + 24)
      << "\" y2=\"" << fmt(row_y) << "\" stroke=\"blue\" stroke-width=\"1.5\"/><text x=\""
      << fmt(lx + 32) << "\" y=\"" << fmt(row_y + 4) << "\">W_nu(" << var << ")</text>\n";
  if (mirror) {
    row_y += 20;
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(row_y) << "\" x2=\"" << fmt(lx + 24)
        << "\" y2=\"" << fmt(row_y)
        << "\" stroke=\"green\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/><text x=\""
        << fmt(lx + 32) << "\" y=\"" << fmt(row_y + 4) << "\">W_nu(-" << var << ")</text>\n";
  }
  row_y += 20;
  svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(row_y) << "\" x2=\"" << fmt(lx + 24)
      << "\" y2=\"" << fmt(row_y)
      << "\" stroke=\"red\" stroke-width=\"1\" stroke-dasharray=\"3 3\"/><text x=\""
      << fmt(lx + 32) << "\" y=\"" << fmt(row_y + 4) << "\">truncation locus</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qes
