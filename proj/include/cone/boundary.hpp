#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "cone/geometry.hpp"
#include "cone/jordan.hpp"
#include "cone/quadrature.hpp"
#include "cone/rng.hpp"
#include "cone/special.hpp"
#include "cone/spherical.hpp"
#include "cone/types.hpp"

namespace cone {

// A function on (a chart of) the boundary orbit: receives the ambient matrix
// y = k diag(t) k^* and its rank-l eigenvalue vector t.
using BoundaryFn = std::function<Cplx(const Mat& y, const std::vector<double>& t)>;

// K-invariant function of the rank-l eigenvalues (descending).
struct RadialFunction {
  int l = 1;
  std::function<Cplx(const std::vector<double>&)> eval;
  bool weyl_invariant = true;
};

struct QuadratureSpec {
  size_t n_k = 20000;        // K Monte Carlo samples (>= 10^3)
  int panels = 8;            // log-grid panels per radial axis
  int gl_order = 12;
  double log_tmin = -10.0;
  double log_tmax = 6.0;
  uint64_t seed = 2024;
  size_t n_mc = 400000;      // full-MC fallback sample count (l = 3)
};

struct IntegralResult {
  Cplx value{0.0, 0.0};
  double stderr_ = 0.0;
  double tail_fraction = 0.0;  // outermost-panel share of the accumulated value
};

// ---------------------------------------------------------------------------
// Radial rules in eigenvalue coordinates (invariant measure, l <= 2)
// ---------------------------------------------------------------------------

namespace detail {

struct RadialNode {
  std::vector<double> t;  // descending
  double weight;          // includes the invariant-measure Jacobian in log coords
  bool outer;             // lies in an outermost panel (tail reporting)
};

// Invariant measure of the rank-l cone in log coordinates:
//   l = 1:  d*t = ds
//   l = 2:  |t1 - t2|^d (t1 t2)^{-d/2} ds1 ds2 / 2   (unordered pairs halved)
// The K^(l)-angular volume is a fixed constant folded into downstream
// calibrations, consistently across every module that uses these rules.
inline std::vector<RadialNode> radial_rule(int l, int d, const QuadratureSpec& spec) {
  LogAxis ax = make_log_axis(spec.log_tmin, spec.log_tmax, spec.panels, spec.gl_order);
  const double h = (spec.log_tmax - spec.log_tmin) / spec.panels;
  auto is_outer = [&](double s) {
    return s < spec.log_tmin + h || s > spec.log_tmax - h;
  };
  std::vector<RadialNode> nodes;
  if (l == 1) {
    nodes.reserve(ax.t.size());
    for (size_t i = 0; i < ax.t.size(); ++i)
      nodes.push_back({{ax.t[i]}, ax.w[i], is_outer(ax.s[i])});
  } else if (l == 2) {
    nodes.reserve(ax.t.size() * ax.t.size());
    for (size_t i = 0; i < ax.t.size(); ++i)
      for (size_t j = 0; j < ax.t.size(); ++j) {
        double t1 = ax.t[i], t2 = ax.t[j];
        double jac = std::pow(std::abs(t1 - t2), d) * std::pow(t1 * t2, -0.5 * d);
        double w = 0.5 * ax.w[i] * ax.w[j] * jac;
        if (w == 0.0) continue;
        std::vector<double> t = {std::max(t1, t2), std::min(t1, t2)};
        nodes.push_back({std::move(t), w, is_outer(ax.s[i]) || is_outer(ax.s[j])});
      }
  } else {
    throw DomainError("deterministic radial rules exist only for l <= 2");
  }
  return nodes;
}

inline void assemble(Mat& y, const Mat& k, const std::vector<double>& t) {
  const int r = static_cast<int>(k.rows());
  y.setZero(r, r);
  for (size_t m = 0; m < t.size(); ++m)
    y.noalias() += t[m] * k.col(static_cast<int>(m)) * k.col(static_cast<int>(m)).adjoint();
}

inline std::vector<double> top_eigenvalues(const Mat& y, int l) {
  Eigen::SelfAdjointEigenSolver<Mat> es(y);
  VecR lam = es.eigenvalues();  // ascending
  std::vector<double> t(static_cast<size_t>(l));
  const int r = static_cast<int>(y.rows());
  for (int m = 0; m < l; ++m) t[static_cast<size_t>(m)] = lam[r - 1 - m];
  return t;
}

}  // namespace detail

// int over the rank-l cone of h(t) w.r.t. the invariant measure, with an extra
// factor Delta(t)^{power}; deterministic, no K average.
inline IntegralResult radial_integral(const RadialFunction& f, int d, double power,
                                      const QuadratureSpec& spec) {
  IntegralResult res;
  Cplx total(0.0, 0.0), tail(0.0, 0.0);
  for (const auto& node : detail::radial_rule(f.l, d, spec)) {
    double det = 1.0;
    for (double t : node.t) det *= t;
    Cplx v = node.weight * std::pow(det, power) * f.eval(node.t);
    total += v;
    if (node.outer) tail += v;
  }
  res.value = total;
  res.tail_fraction = std::abs(tail) / std::max(1e-300, std::abs(total));
  return res;
}

// ---------------------------------------------------------------------------
// Integration over the boundary orbit (polar decomposition of mu_l)
// ---------------------------------------------------------------------------

// int_{d_l Omega} f dmu_l = int_K int_{Omega^(l)} Delta_(l)(x)^{rd/2} f(kx) d*x dk.
// K by Monte Carlo (stderr across K samples), radial part by the log rule at
// l <= 2 and by importance-sampled Monte Carlo at l = 3.
inline IntegralResult boundary_integral(const AlgebraDescriptor& desc, int l,
                                        const BoundaryFn& f, const QuadratureSpec& spec) {
  const int r = desc.rank, d = desc.degree();
  if (l < 1 || l > r - 1) throw DomainError("orbit index must satisfy 1 <= l <= r-1");
  if (spec.n_k < 1000) throw DomainError("need at least 10^3 K samples");

  if (l <= 2) {
    auto nodes = detail::radial_rule(l, d, spec);
    const double p = 0.5 * r * d;
    RandomStream rng(spec.seed);
    detail::McAccumulator acc;
    Cplx tail_sum(0.0, 0.0);
    Mat y(r, r);
    for (size_t i = 0; i < spec.n_k; ++i) {
      GroupElement k = haar_sample(rng, desc);
      Cplx ik(0.0, 0.0), it(0.0, 0.0);
      for (const auto& node : nodes) {
        double det = 1.0;
        for (double t : node.t) det *= t;
        detail::assemble(y, k.matrix, node.t);
        Cplx v = node.weight * std::pow(det, p) * f(y, node.t);
        ik += v;
        if (node.outer) it += v;
      }
      acc.add(ik);
      tail_sum += it;
    }
    McResult m = acc.result();
    IntegralResult res;
    res.value = m.value;
    res.stderr_ = m.stderr_;
    res.tail_fraction = std::abs(tail_sum / static_cast<double>(spec.n_k)) /
                        std::max(1e-300, std::abs(m.value));
    if (res.tail_fraction > 1e-3)
      throw QuadratureError("radial truncation tail exceeds 1e-3 of the integral");
    return res;
  }

  if (l == 3) {
    // Full Monte Carlo: log-eigenvalues from a broad Gaussian proposal.
    const double mu = 0.0, sigma = 2.5;
    const double p = 0.5 * r * d;
    RandomStream rng(spec.seed);
    detail::McAccumulator acc;
    Mat y(r, r);
    double lfac = 6.0;  // 3! orderings of the eigenvalue tuple
    for (size_t i = 0; i < spec.n_mc; ++i) {
      GroupElement k = haar_sample(rng, desc);
      std::vector<double> s(3), t(3);
      double logq = 0.0;
      for (int m = 0; m < 3; ++m) {
        s[m] = mu + sigma * rng.gaussian();
        t[m] = std::exp(s[m]);
        double z = (s[m] - mu) / sigma;
        logq += -0.5 * z * z - std::log(sigma * std::sqrt(2.0 * M_PI));
      }
      std::sort(t.begin(), t.end(), std::greater<double>());
      double jac = 1.0, det = 1.0;
      for (int a = 0; a < 3; ++a) {
        det *= t[a];
        for (int b = a + 1; b < 3; ++b) jac *= std::pow(std::abs(t[a] - t[b]), d);
      }
      jac *= std::pow(det, -0.5 * d * 2.0);  // prod t^{-(l-1)d/2}
      detail::assemble(y, k.matrix, t);
      acc.add(f(y, t) * std::pow(det, p) * jac / (std::exp(logq) * lfac));
    }
    McResult m = acc.result();
    return IntegralResult{m.value, m.stderr_, 0.0};
  }
  throw DomainError("unsupported orbit index");
}

// Adapters.
inline BoundaryFn ambient_fn(std::function<Cplx(const Mat&)> f) {
  return [f = std::move(f)](const Mat& y, const std::vector<double>&) { return f(y); };
}

inline BoundaryFn radial_fn(const RadialFunction& f) {
  return [f](const Mat&, const std::vector<double>& t) { return f.eval(t); };
}

// Pre-compose with the action of g: x -> f(gx). Eigenvalues are recomputed
// since the action does not preserve them.
inline BoundaryFn composed_with_action(const GroupElement& g, const BoundaryFn& f, int l) {
  Mat a = g.matrix;
  return [a, f, l](const Mat& y, const std::vector<double>&) {
    Mat z = a * y * a.adjoint();
    z = Cplx(0.5, 0.0) * (z + Mat(z.adjoint()));
    return f(z, detail::top_eigenvalues(z, l));
  };
}

// pi^l(g) f = Delta(g)^{ld/4} f(g^* .).
inline BoundaryFn pi_l_act(const GroupElement& g, const BoundaryFn& f, int l) {
  double pref = std::pow(group_character(g), 0.25 * l * g.algebra.degree());
  BoundaryFn moved = composed_with_action(adjoint(g), f, l);
  return [pref, moved](const Mat& y, const std::vector<double>& t) {
    return pref * moved(y, t);
  };
}

// ---------------------------------------------------------------------------
// Relative invariance of mu_l
// ---------------------------------------------------------------------------

struct InvarianceReport {
  Cplx lhs;          // int f(gx) dmu_l(x)
  Cplx rhs;          // Delta(g)^{-ld/2} int f dmu_l
  double ratio_error = 0.0;
  double sigma = 0.0;  // upper bound on the stderr of |lhs - rhs| / |rhs|
  bool pass = false;
};

inline InvarianceReport relative_invariance_check(const GroupElement& g, const BoundaryFn& f,
                                                  int l, const QuadratureSpec& spec,
                                                  double rtol = 0.01) {
  IntegralResult moved = boundary_integral(g.algebra, l, composed_with_action(g, f, l), spec);
  IntegralResult base = boundary_integral(g.algebra, l, f, spec);  // same seed: CRN
  double factor = std::pow(group_character(g), -0.5 * l * g.algebra.degree());
  InvarianceReport rep;
  rep.lhs = moved.value;
  rep.rhs = factor * base.value;
  rep.ratio_error = std::abs(rep.lhs - rep.rhs) / std::max(1e-300, std::abs(rep.rhs));
  // Var(lhs - rhs) <= Var(lhs) + Var(rhs) + 2 sqrt(Var Var'); with common random
  // numbers the true variance is smaller, so this gate is conservative.
  rep.sigma = (moved.stderr_ + factor * base.stderr_) / std::max(1e-300, std::abs(rep.rhs));
  rep.pass = rep.ratio_error <= std::max(rtol, 4.0 * rep.sigma);
  return rep;
}

// ---------------------------------------------------------------------------
// Riesz functional (measure regime Re nu >= 0)
// ---------------------------------------------------------------------------

namespace detail {

// Absolute normalization of mu_l, fixed so that R_{ld/2}(e^{-tr}) = 1.
// The integrand at the calibration point is K-invariant, so this is a pure
// radial quadrature and deterministic.
inline double riesz_normalization(const AlgebraDescriptor& desc, int l,
                                  const QuadratureSpec& spec) {
  static std::map<std::tuple<int, int, int>, double> cache;
  auto key = std::make_tuple(static_cast<int>(desc.model), desc.rank, l);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const int d = desc.degree();
  RadialFunction expf{l,
                      [](const std::vector<double>& t) {
                        double s = 0.0;
                        for (double v : t) s += v;
                        return Cplx(std::exp(-s), 0.0);
                      },
                      true};
  QuadratureSpec s2 = spec;
  s2.panels = std::max(spec.panels, 12);
  double raw = radial_integral(expf, d, 0.5 * desc.rank * d, s2).value.real();
  double kappa = raw / gindikin_gamma(constant_weight(0.5 * l * d, l), l, d).real();
  cache[key] = kappa;
  return kappa;
}

}  // namespace detail

// R_{nu + ld/2}(F) = Gamma_{O^(l)}(nu + ld/2)^{-1} int F Delta_nu dmu_l,
// implemented only in the measure regime Re nu >= 0 (decreasing); anything
// else is rejected rather than extrapolated.
inline Cplx riesz_functional(const AlgebraDescriptor& desc,
                             const std::function<Cplx(const Mat&)>& F, const Weight& nu,
                             int l, const QuadratureSpec& spec) {
  if (static_cast<int>(nu.size()) != l) throw StructuralError("nu must have length l");
  for (int j = 0; j < l; ++j) {
    if (nu[j].real() < 0.0 || (j + 1 < l && nu[j].real() < nu[j + 1].real()))
      throw DomainError("Riesz functional: need Re nu decreasing and >= 0");
  }
  const int r = desc.rank, d = desc.degree();
  Weight nu_amb = pad_trailing(nu, r);
  BoundaryFn integrand = [&F, nu_amb](const Mat& y, const std::vector<double>&) {
    return F(y) * detail::power_function_impl(y, nu_amb);
  };
  Cplx raw = boundary_integral(desc, l, integrand, spec).value;
  Cplx gamma = gindikin_gamma(shifted(nu, 0.5 * l * d), l, d);
  return raw / gamma / detail::riesz_normalization(desc, l, spec);
}

// ---------------------------------------------------------------------------
// K-invariant projection P(f) = int_K f(k^{-1} .) dk
// ---------------------------------------------------------------------------

inline RadialFunction k_invariant_project(const AlgebraDescriptor& desc, const BoundaryFn& f,
                                          int l, const QuadratureSpec& spec) {
  auto ks = std::make_shared<std::vector<Mat>>();
  RandomStream rng(spec.seed + 7);
  size_t n = std::max<size_t>(spec.n_k, 1000);
  ks->reserve(n);
  for (size_t i = 0; i < n; ++i) ks->push_back(haar_sample(rng, desc).matrix);
  RadialFunction out;
  out.l = l;
  out.weyl_invariant = true;
  out.eval = [ks, f, rank = desc.rank](const std::vector<double>& t) {
    Mat y(rank, rank);
    Cplx acc(0.0, 0.0);
    for (const Mat& k : *ks) {
      detail::assemble(y, k, t);
      acc += f(y, t);
    }
    return acc / static_cast<double>(ks->size());
  };
  return out;
}

}  // namespace cone
