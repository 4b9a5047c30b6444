#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "cecsp/cli.hpp"

namespace cecsp::cli {

namespace {

constexpr std::array<const char*, 10> kPalette{
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace

// Stacked per-interval consumption rates: x is time, y is resource rate.
std::string gantt_svg(const Instance& inst, const Schedule& sched) {
  const EventOrder& order = sched.order;
  const double t_end = std::max(inst.horizon(), *std::max_element(sched.times.begin(),
                                                                  sched.times.end()));
  double peak = inst.capacity();
  for (int pos = 1; pos < order.size(); ++pos) {
    const double dt = sched.time(order.at(pos + 1)) - sched.time(order.at(pos));
    if (dt <= 0) continue;
    double total = 0;
    for (const auto& [key, amount] : sched.consumption) {
      if (key.opening == order.at(pos)) total += amount;
    }
    peak = std::max(peak, total / dt);
  }

  const double width = 800, height = 300, margin = 40;
  const double sx = width / std::max(t_end, 1e-9);
  const double sy = height / peak;
  auto x = [&](double t) { return margin + t * sx; };
  auto y = [&](double r) { return margin + height - r * sy; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width + 2 * margin + 120)
      << "\" height=\"" << num(height + 2 * margin) << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int pos = 1; pos < order.size(); ++pos) {
    const EventId opening = order.at(pos);
    const double t0 = sched.time(opening);
    const double dt = sched.time(order.at(pos + 1)) - t0;
    if (dt <= 0) continue;
    double base = 0;
    for (int j = 1; j <= inst.num_jobs(); ++j) {
      auto it = sched.consumption.find({j, opening});
      if (it == sched.consumption.end() || it->second <= 0) continue;
      const double rate = it->second / dt;
      svg << "<rect x=\"" << num(x(t0)) << "\" y=\"" << num(y(base + rate)) << "\" width=\""
          << num(dt * sx) << "\" height=\"" << num(rate * sy) << "\" fill=\""
          << kPalette[(j - 1) % kPalette.size()] << "\" stroke=\"black\" stroke-width=\"0.5\">"
          << "<title>job " << j << ": " << num(it->second) << " over [" << num(t0) << ", "
          << num(t0 + dt) << ")</title></rect>\n";
      base += rate;
    }
  }

  svg << "<line x1=\"" << num(x(0)) << "\" y1=\"" << num(y(inst.capacity())) << "\" x2=\""
      << num(x(t_end)) << "\" y2=\"" << num(y(inst.capacity()))
      << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  svg << "<text x=\"" << num(x(t_end) + 4) << "\" y=\"" << num(y(inst.capacity()) + 4)
      << "\">P = " << num(inst.capacity()) << "</text>\n";
  svg << "<line x1=\"" << num(x(0)) << "\" y1=\"" << num(y(0)) << "\" x2=\"" << num(x(t_end))
      << "\" y2=\"" << num(y(0)) << "\" stroke=\"black\"/>\n";
  for (int pos = 1; pos <= order.size(); ++pos) {
    const EventId id = order.at(pos);
    const double t = sched.time(id);
    svg << "<line x1=\"" << num(x(t)) << "\" y1=\"" << num(y(0)) << "\" x2=\"" << num(x(t))
        << "\" y2=\"" << num(y(0) + 5) << "\" stroke=\"black\"/>\n";
  }
  for (int j = 1; j <= inst.num_jobs(); ++j) {
    const double ly = margin + 16.0 * (j - 1);
    svg << "<rect x=\"" << num(width + margin + 20) << "\" y=\"" << num(ly)
        << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[(j - 1) % kPalette.size()]
        << "\"/><text x=\"" << num(width + margin + 34) << "\" y=\"" << num(ly + 9)
        << "\">job " << j << "</text>\n";
  }
  svg << "<text x=\"" << num(x(0)) << "\" y=\"" << num(y(0) + 20) << "\">0</text>\n";
  svg << "<text x=\"" << num(x(t_end) - 10) << "\" y=\"" << num(y(0) + 20) << "\">"
      << num(t_end) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace cecsp::cli
