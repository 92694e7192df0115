#include "rblab/chart.hpp"

#include <cmath>
#include <cstdio>

namespace rblab {

bool DomainBox::contains(std::span<const double> p) const {
  if (p.size() != lo.size()) return false;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!periodic.empty() && periodic[i]) continue;
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

std::string DomainBox::describe() const {
  std::string s;
  char buf[96];
  for (size_t i = 0; i < lo.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s[%g, %g%c", i ? " x " : "", lo[i], hi[i],
                  (!periodic.empty() && periodic[i]) ? ')' : ']');
    s += buf;
  }
  return s;
}

std::vector<Point> sample_grid(const DomainBox& box, int per_axis) {
  const int d = static_cast<int>(box.lo.size());
  std::vector<double> step(d), start(d);
  for (int i = 0; i < d; ++i) {
    const bool per = !box.periodic.empty() && box.periodic[i];
    const double len = box.hi[i] - box.lo[i];
    step[i] = per ? len / per_axis : len / (per_axis - 1);
    start[i] = box.lo[i];
  }
  std::vector<Point> pts;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= per_axis;
  pts.reserve(total);
  for (int flat = 0; flat < total; ++flat) {
    Point p(d);
    int f = flat;
    for (int i = d - 1; i >= 0; --i) {
      p[i] = start[i] + step[i] * (f % per_axis);
      f /= per_axis;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace rblab
