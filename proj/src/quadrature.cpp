#include "arclab/quadrature.hpp"

#include <limits>
#include <stdexcept>

namespace arclab {

// Abscissas and weights for 16-point Gauss-Legendre on [-1,1].
extern const double kGL16Nodes[16] = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};
extern const double kGL16Weights[16] = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

int gl16_panel_count(double a, double b, double rate, double phase_budget,
                     int min_panels) {
  if (!(b >= a)) throw std::invalid_argument("gl16: empty interval");
  if (!(phase_budget > 0)) throw std::invalid_argument("gl16: bad budget");
  const double len = b - a;
  int panels = min_panels < 1 ? 1 : min_panels;
  if (rate > 0 && len > 0) {
    const double need = rate * len / phase_budget;
    if (need > static_cast<double>(panels)) {
      // saturate instead of overflowing the cast; callers with an actual
      // panel budget compare against their own much smaller caps
      constexpr int kMaxPanels = std::numeric_limits<int>::max() / 16;
      panels = need >= static_cast<double>(kMaxPanels)
                   ? kMaxPanels
                   : static_cast<int>(std::ceil(need));
    }
  }
  return panels;
}

PanelRule composite_gl16(double a, double b, double rate, double phase_budget,
                         int min_panels) {
  const int panels = gl16_panel_count(a, b, rate, phase_budget, min_panels);
  PanelRule r;
  r.x.reserve(static_cast<std::size_t>(panels) * 16);
  r.w.reserve(static_cast<std::size_t>(panels) * 16);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + h * (p + 0.5);
    const double half = 0.5 * h;
    for (int i = 0; i < 16; ++i) {
      r.x.push_back(mid + half * kGL16Nodes[i]);
      r.w.push_back(half * kGL16Weights[i]);
    }
  }
  return r;
}

}  // namespace arclab
