#include "hetsched/gantt.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hetsched/io.hpp"

namespace hetsched {
namespace {

// FNV-1a, fixed so colors are stable across runs and platforms
unsigned label_hash(const std::string& s) {
  unsigned h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::string color_for(const std::string& label) {
  const unsigned h = label_hash(label);
  const int hue = static_cast<int>(h % 360u);
  const int sat = 52 + static_cast<int>((h / 360u) % 28u);
  return "hsl(" + std::to_string(hue) + "," + std::to_string(sat) + "%,64%)";
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (mag * m >= raw) return mag * m;
  return 10.0 * mag;
}

}  // namespace

std::string gantt_svg(const Schedule& s, const std::vector<JobInstance>& jobs,
                      const Platform& platform) {
  constexpr double kLeft = 96, kTop = 30, kRowH = 30, kGap = 8, kPlotW = 920, kPad = 16;

  int rows = 0;
  std::vector<int> row_base(s.cores_per_type.size(), 0);
  for (std::size_t r = 0; r < s.cores_per_type.size(); ++r) {
    row_base[r] = rows;
    rows += s.cores_per_type[r];
  }
  const double width = kLeft + kPlotW + kPad;
  const double height = kTop + rows * (kRowH + kGap) + kPad;
  const double horizon = s.horizon > 0 ? s.horizon : 1.0;
  const double scale = kPlotW / horizon;
  auto row_y = [&](int type, int proc) { return kTop + (row_base[type] + proc) * (kRowH + kGap); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
      << px(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // lane backgrounds and labels
  for (std::size_t r = 0; r < s.cores_per_type.size(); ++r) {
    const std::string name =
        r < platform.types.size() ? platform.types[r].name : "type" + std::to_string(r);
    for (int k = 0; k < s.cores_per_type[r]; ++k) {
      const double y = row_y(static_cast<int>(r), k);
      svg << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(y) << "\" width=\"" << px(kPlotW)
          << "\" height=\"" << px(kRowH) << "\" fill=\"#f3f3f3\"/>\n";
      svg << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(y + kRowH / 2 + 4)
          << "\" text-anchor=\"end\">" << escape(name) << ' ' << k << "</text>\n";
    }
  }

  // time axis
  const double step = nice_step(horizon);
  for (double t = 0.0; t <= horizon + step * 1e-9; t += step) {
    const double x = kLeft + t * scale;
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop - 4) << "\" x2=\"" << px(x)
        << "\" y2=\"" << px(height - kPad) << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
    svg << "<text x=\"" << px(x) << "\" y=\"" << px(kTop - 8) << "\" text-anchor=\"middle\">"
        << format_double(t) << "</text>\n";
  }

  for (const auto& seg : s.segments) {
    const double x = kLeft + seg.start * scale;
    const double w = (seg.end - seg.start) * scale;
    const double y = row_y(seg.type, seg.proc);
    const std::string label = seg.job >= 0 && seg.job < static_cast<int>(jobs.size())
                                  ? jobs[seg.job].label
                                  : "job" + std::to_string(seg.job);
    svg << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(w)
        << "\" height=\"" << px(kRowH) << "\" fill=\"" << color_for(label)
        << "\" stroke=\"#333333\" stroke-width=\"0.5\"><title>" << escape(label) << " ["
        << format_double(seg.start) << ", " << format_double(seg.end) << ") s="
        << format_double(seg.speed) << "</title></rect>\n";
    if (w >= 46) {
      svg << "<text x=\"" << px(x + w / 2) << "\" y=\"" << px(y + 12)
          << "\" text-anchor=\"middle\">" << escape(label) << "</text>\n";
      svg << "<text x=\"" << px(x + w / 2) << "\" y=\"" << px(y + 24)
          << "\" text-anchor=\"middle\" font-size=\"9\">s=" << format_double(seg.speed)
          << "</text>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hetsched
