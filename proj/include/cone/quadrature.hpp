#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "cone/types.hpp"

namespace cone {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

// Panel-composite Gauss-Legendre integral of f over [a, b].
template <typename F>
auto panel_integrate(F&& f, double a, double b, int panels, int order)
    -> decltype(f(0.0)) {
  const GaussRule& gl = gauss_legendre(order);
  decltype(f(0.0)) acc{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int q = 0; q < order; ++q) {
      double x = lo + 0.5 * h * (gl.nodes[q] + 1.0);
      acc += (0.5 * h * gl.weights[q]) * f(x);
    }
  }
  return acc;
}

// Doubles the panel count until the relative change drops below rtol.
template <typename F>
auto adaptive_panel_integrate(F&& f, double a, double b, int panels, int order,
                              double rtol = 1e-9, int max_panels = 1024)
    -> decltype(f(0.0)) {
  auto prev = panel_integrate(f, a, b, panels, order);
  for (int p = 2 * panels; p <= max_panels; p *= 2) {
    auto cur = panel_integrate(f, a, b, p, order);
    if (std::abs(cur - prev) <= rtol * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  throw QuadratureError("panel quadrature did not converge within the panel cap");
}

// One axis of a log-substituted radial rule: t = e^s, s on [log_tmin, log_tmax].
struct LogAxis {
  std::vector<double> s;  // nodes in log space
  std::vector<double> t;  // e^s
  std::vector<double> w;  // ds-weights
};

inline LogAxis make_log_axis(double log_tmin, double log_tmax, int panels, int order) {
  const GaussRule& gl = gauss_legendre(order);
  LogAxis ax;
  const double h = (log_tmax - log_tmin) / panels;
  ax.s.reserve(panels * order);
  for (int p = 0; p < panels; ++p) {
    const double lo = log_tmin + p * h;
    for (int q = 0; q < order; ++q) {
      double s = lo + 0.5 * h * (gl.nodes[q] + 1.0);
      ax.s.push_back(s);
      ax.t.push_back(std::exp(s));
      ax.w.push_back(0.5 * h * gl.weights[q]);
    }
  }
  return ax;
}

}  // namespace cone
