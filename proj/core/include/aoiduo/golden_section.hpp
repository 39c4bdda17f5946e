#pragma once

#include <cmath>
#include <utility>

namespace aoiduo {

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [lo, hi]. The endpoints are
/// evaluated too, so a maximum sitting on a bracket edge (a kink of the
/// objective) is not lost. Exact for unimodal f up to the x tolerance.
template <class F>
Maximum golden_section_maximize(F&& f, double lo, double hi, double x_tol = 1e-12,
                                int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498948482;
  Maximum best{lo, f(lo)};
  if (const double v = f(hi); v > best.value) best = {hi, v};
  if (!(hi > lo)) return best;

  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > x_tol * (1.0 + std::abs(a)); ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

}  // namespace aoiduo
