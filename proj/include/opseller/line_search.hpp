#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace opseller {

struct ScalarMax {
  double x = std::numeric_limits<double>::quiet_NaN();
  double value = -std::numeric_limits<double>::infinity();

  [[nodiscard]] bool found() const { return !std::isnan(x); }
};

/// Maximizes f over the half-open interval [lo, hi): a uniform grid of
/// `grid_points` samples starting at lo, then golden-section refinement inside
/// the bracket around the best sample. The returned point is always one that
/// was evaluated, so it never lands on hi. Ties keep the earliest sample.
template <class F>
ScalarMax grid_then_golden_max(F&& f, double lo, double hi, std::size_t grid_points, double tol) {
  ScalarMax best;
  if (!(hi > lo) || grid_points == 0) return best;

  const double step = (hi - lo) / static_cast<double>(grid_points);
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  if (!best.found()) return best;

  double a = best_i == 0 ? lo : lo + step * static_cast<double>(best_i - 1);
  double b = lo + step * static_cast<double>(best_i + 1);
  if (b >= hi) b = std::nextafter(hi, lo);

  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  if (fc > best.value) best = {c, fc};
  if (fd > best.value) best = {d, fd};
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
  }
  return best;
}

}  // namespace opseller
