#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace arclab {

// Compensated accumulator (Neumaier's variant of Kahan summation); the long
// oscillatory sums cancel heavily and plain += loses digits we care about.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// 16-point Gauss-Legendre rule on [-1,1].
extern const double kGL16Nodes[16];
extern const double kGL16Weights[16];

struct PanelRule {
  std::vector<double> x, w;
  std::size_t size() const { return x.size(); }
};

// Composite GL16 over [a,b]: split into equal panels so that `rate`
// (an upper bound for |d(phase)/dx| in radians per unit length) stays at or
// below `phase_budget` radians per panel, then lay 16 Gauss nodes on each.
// With the default budget of 3*pi the rule resolves a pure oscillation at
// the bound rate to ~1e-13 relative per panel.
PanelRule composite_gl16(double a, double b, double rate,
                         double phase_budget = 3.0 * M_PI,
                         int min_panels = 1);

// Panel count only (for sizing caches that mirror a PanelRule).
int gl16_panel_count(double a, double b, double rate,
                     double phase_budget = 3.0 * M_PI, int min_panels = 1);

}  // namespace arclab
