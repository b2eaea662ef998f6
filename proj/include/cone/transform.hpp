#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cone/boundary.hpp"
#include "cone/geometry.hpp"
#include "cone/quadrature.hpp"
#include "cone/special.hpp"
#include "cone/spherical.hpp"
#include "cone/types.hpp"

namespace cone {

// ---------------------------------------------------------------------------
// Spherical Fourier transform on the rank-l cone
// ---------------------------------------------------------------------------

// The radial FT axis is a uniform trapezoidal grid in log t. For the Mellin
// kernel exp(-i lambda s) the trapezoid rule is spectrally accurate up to
// |lambda| < pi / log_step; keep the lambda cut below that.
struct TransformSpec {
  double log_tmin = -24.0;
  double log_tmax = 6.0;
  double log_step = 0.1;
};

// Coarser axis at l = 2: the cost per transform value is quadratic in the
// axis size, and the tensor grids below keep the lambda cut at 9 < pi/0.25.
inline TransformSpec default_transform_spec(int l) {
  TransformSpec spec;
  if (l >= 2) {
    spec.log_tmin = -18.0;
    spec.log_step = 0.125;
  }
  return spec;
}

namespace detail {
inline double log_cosh(double y) {
  double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

// Angular factor of the rank-2 spherical function at eigenvalues
// (e^{delta/2}, e^{-delta/2}):
//   d = 2:  sinh((z+1) delta/2) / ((z+1) sinh(delta/2))   (exact)
//   d = 1:  (1/pi) int_0^pi (cosh(delta/2) + sinh(delta/2) cos p)^z dp.
// For d = 1 substitute cos p = tanh y, giving
//   (1/pi) int_R (cosh(y + delta/2)/cosh y)^z dy / cosh y:
// the phase rate is bounded by 2 |Im z| everywhere and the envelope decays
// like e^{-|y|}, so a uniform trapezoid grid in y is spectrally accurate.
inline Cplx rank2_angular(Cplx z, double delta, int d) {
  delta = std::abs(delta);
  if (delta < 1e-14) return Cplx(1.0, 0.0);
  if (d == 2) {
    Cplx w = z + 1.0;
    double sh = std::sinh(0.5 * delta);
    if (std::abs(w) < 1e-8) return Cplx(0.5 * delta / sh, 0.0);
    return std::sinh(w * 0.5 * delta) / (w * sh);
  }
  if (d != 1) throw DomainError("degree must be 1 or 2");
  double rate = 2.0 * std::abs(z.imag()) * std::tanh(0.25 * delta);
  double h = std::min(0.25, 1.3 / (rate + 1e-12));
  double pad = 38.0 + 0.5 * delta * std::abs(z.real());
  double lo = -0.5 * delta - pad, hi = pad;
  int n = static_cast<int>(std::ceil((hi - lo) / h));
  Cplx acc(0.0, 0.0);
  for (int m = 0; m <= n; ++m) {
    double y = lo + (hi - lo) * m / n;
    acc += std::exp(z * (log_cosh(y + 0.5 * delta) - log_cosh(y)) - log_cosh(y));
  }
  return acc * ((hi - lo) / n) / M_PI;
}

struct UniformLogAxis {
  std::vector<double> s, t;
  double h;
};
inline UniformLogAxis uniform_log_axis(const TransformSpec& spec) {
  UniformLogAxis ax;
  ax.h = spec.log_step;
  int n = static_cast<int>(std::round((spec.log_tmax - spec.log_tmin) / spec.log_step)) + 1;
  for (int i = 0; i < n; ++i) {
    double s = spec.log_tmin + i * spec.log_step;
    ax.s.push_back(s);
    ax.t.push_back(std::exp(s));
  }
  return ax;
}
}  // namespace detail

// f_hat(nu) = int_{Omega^(l)} f(x) Phi^(l)_{-nu+rho^(l)}(x) d*x, evaluated on a
// fixed radial grid. The grid, the sampled f, and (at l = 2) the angular
// log-base table are precomputed once so sweeps over nu are cheap.
class FtEvaluator {
 public:
  FtEvaluator(const RadialFunction& f, int d, const TransformSpec& spec = {})
      : l_(f.l), d_(d) {
    detail::UniformLogAxis ax = detail::uniform_log_axis(spec);
    const size_t n = ax.t.size();
    if (l_ == 1) {
      logt_.resize(n);
      coef_.resize(n);
      for (size_t i = 0; i < n; ++i) {
        logt_[i] = ax.s[i];
        coef_[i] = ax.h * f.eval({ax.t[i]});
      }
    } else if (l_ == 2) {
      // Re-bin the tensor grid by (sigma, delta) = (s1 + s2, s1 - s2): the
      // spherical function splits as exp(sigma (mu1+mu2)/2) g_{mu1-mu2}(delta),
      // so an evaluation needs one exp per distinct sigma and one angular
      // factor per distinct delta instead of work per grid node.
      n_ = n;
      smin_ = ax.s.front();
      h_ = ax.h;
      hsum_.assign(n, std::vector<Cplx>(2 * n - 1, Cplx(0.0, 0.0)));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          double t1 = ax.t[i], t2 = ax.t[j];
          double jac = std::pow(std::abs(t1 - t2), d_) * std::pow(t1 * t2, -0.5 * d_);
          Cplx wf = 0.5 * ax.h * ax.h * jac *
                    f.eval({std::max(t1, t2), std::min(t1, t2)});
          size_t q = i > j ? i - j : j - i;
          hsum_[q][i + j] += wf;
        }
      row_mass_.assign(n, 0.0);
      for (size_t q = 0; q < n; ++q)
        for (const Cplx& v : hsum_[q]) row_mass_[q] += std::abs(v);
      total_mass_ = 0.0;
      for (double m : row_mass_) total_mass_ += m;
      if (d_ == 1) {
        // Euler-Maclaurin correction for the |t1 - t2| kink on the diagonal:
        // per sigma-slice the delta-rule (step 2h) misses -(2h)^2/12 f (kink on
        // a node, even slices) resp. +(2h)^2/24 f (kink mid-cell, odd slices),
        // where f is the slice's diagonal value; d(jac)/d(delta) = 1 at 0+.
        diag_.resize(2 * n - 1);
        for (size_t k = 0; k + 1 < 2 * n; ++k) {
          double t = std::exp(smin_ + 0.5 * static_cast<double>(k) * h_);
          double c = (k % 2 == 0) ? h_ * h_ * h_ / 6.0 : -h_ * h_ * h_ / 12.0;
          diag_[k] = c * f.eval({t, t});
        }
      }
    } else {
      throw DomainError("spherical Fourier transform implemented for l <= 2");
    }
  }

  int orbit_rank() const { return l_; }

  Cplx operator()(const Weight& nu) const {
    if (static_cast<int>(nu.size()) != l_)
      throw StructuralError("FT weight length mismatch");
    if (l_ == 1) {
      Cplx acc(0.0, 0.0);
      const Cplx m = -nu[0];  // rho^(1) = 0
      for (size_t i = 0; i < logt_.size(); ++i) acc += coef_[i] * std::exp(m * logt_[i]);
      return acc;
    }
    const double rho1 = -0.25 * d_, rho2 = 0.25 * d_;
    const Cplx mu1 = -nu[0] + rho1, mu2 = -nu[1] + rho2;
    const Cplx z = mu1 - mu2, w = 0.5 * (mu1 + mu2);
    std::vector<Cplx> ew(2 * n_ - 1);
    for (size_t k = 0; k < ew.size(); ++k)
      ew[k] = std::exp(w * (2.0 * smin_ + static_cast<double>(k) * h_));
    // |g_z(delta)| <= e^{|Re z| delta / 2}; rows that cannot contribute at
    // working precision are skipped before the angular integral.
    double ew_max = 0.0;
    for (const Cplx& v : ew) ew_max = std::max(ew_max, std::abs(v));
    Cplx acc(0.0, 0.0);
    for (size_t q = 0; q < n_; ++q) {
      double delta = static_cast<double>(q) * h_;
      double bound = row_mass_[q] * std::exp(0.5 * std::abs(z.real()) * delta) * ew_max;
      if (bound < 1e-16 * total_mass_ * ew_max) continue;
      Cplx inner(0.0, 0.0);
      for (size_t k = q; k + q <= 2 * (n_ - 1); k += 2) inner += hsum_[q][k] * ew[k];
      acc += detail::rank2_angular(z, delta, d_) * inner;
    }
    if (d_ == 1)
      for (size_t k = 0; k < diag_.size(); ++k) acc += diag_[k] * ew[k];
    return acc;
  }

 private:
  int l_, d_;
  std::vector<double> logt_;
  std::vector<Cplx> coef_;
  size_t n_ = 0;
  double smin_ = 0.0, h_ = 0.0;
  std::vector<std::vector<Cplx>> hsum_;  // [ |i-j| ][ i+j ]
  std::vector<double> row_mass_;
  std::vector<Cplx> diag_;
  double total_mass_ = 0.0;
};

inline Cplx spherical_ft(const RadialFunction& f, const Weight& nu, int d,
                         const TransformSpec& spec) {
  return FtEvaluator(f, d, spec)(nu);
}

inline Cplx spherical_ft(const RadialFunction& f, const Weight& nu, int d) {
  return spherical_ft(f, nu, d, default_transform_spec(f.l));
}

// ---------------------------------------------------------------------------
// The weighted transform f~ and the lambda grid
// ---------------------------------------------------------------------------

// f~(lambda) = gamma^(l)_{-(i lambda + rho'_l)} f_hat(i lambda - rd/4).
inline Cplx tilde_transform(const FtEvaluator& ft, const WeightR& lambda, int r, int d,
                            int l) {
  RhoVectors rho(r, d, l);
  WeightR rlp = rho.rho_l_prime();
  Weight nu_gamma(l);
  for (int j = 0; j < l; ++j) nu_gamma[j] = Cplx(-rlp[j], -lambda[j]);
  Cplx gamma = gamma_quotient(nu_gamma, r, l, d);
  return gamma * ft(shifted(times_i(lambda), -0.25 * r * d));
}

// Midpoint tensor grid on [-cut, cut]^l; midpoints keep the Gamma-factor poles
// (which sit on coordinate hyperplanes) off the grid.
struct LambdaGrid {
  double cut = 16.0;
  double step = 0.05;
};

inline std::vector<double> lambda_axis(const LambdaGrid& grid) {
  int k = std::max(1, static_cast<int>(std::round(grid.cut / grid.step)));
  std::vector<double> axis;
  axis.reserve(2 * k);
  for (int i = -k; i < k; ++i) axis.push_back((i + 0.5) * grid.step);
  return axis;
}

inline std::vector<WeightR> lambda_nodes(const LambdaGrid& grid, int l) {
  std::vector<double> axis = lambda_axis(grid);
  std::vector<WeightR> nodes;
  if (l == 1) {
    for (double a : axis) nodes.push_back({a});
  } else if (l == 2) {
    nodes.reserve(axis.size() * axis.size());
    for (double a : axis)
      for (double b : axis) nodes.push_back({a, b});
  } else {
    throw DomainError("lambda grids implemented for l <= 2");
  }
  return nodes;
}

// For real f, f~(-lambda) = conj f~(lambda); set real_input to compute half
// the grid and mirror.
inline std::vector<Cplx> tilde_on_grid(const FtEvaluator& ft, const LambdaGrid& grid, int r,
                                       int d, int l, bool real_input = false) {
  auto nodes = lambda_nodes(grid, l);
  std::vector<Cplx> vals(nodes.size());
  if (!real_input) {
    for (size_t i = 0; i < nodes.size(); ++i)
      vals[i] = tilde_transform(ft, nodes[i], r, d, l);
    return vals;
  }
  const size_t m = 2 * static_cast<size_t>(std::max(
                           1, static_cast<int>(std::round(grid.cut / grid.step))));
  const size_t half = nodes.size() / 2;
  for (size_t i = 0; i < half; ++i) {
    vals[i] = tilde_transform(ft, nodes[i], r, d, l);
    size_t mirror = 0;
    for (size_t idx = i, dim = 0; dim < static_cast<size_t>(l); ++dim) {
      size_t stride = 1;
      for (size_t k = dim + 1; k < static_cast<size_t>(l); ++k) stride *= m;
      size_t c = idx / stride;
      idx %= stride;
      mirror += (m - 1 - c) * stride;
    }
    vals[mirror] = std::conj(vals[i]);
  }
  return vals;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

// f(x) = c0 int f~(lambda) Phi^(l)_{i lambda + rho^(l) - rd/4}(x)
//        (gamma^(l)_{-(i lambda + rho'_l)})^{-1} dlambda / |c^(l)(lambda)|^2.
inline Cplx invert_at(const std::vector<Cplx>& tilde_values, const LambdaGrid& grid,
                      const std::vector<double>& eigs, int r, int d, int l, double c0) {
  auto nodes = lambda_nodes(grid, l);
  if (nodes.size() != tilde_values.size())
    throw StructuralError("tilde grid does not match the lambda grid");
  RhoVectors rho(r, d, l);
  WeightR rlp = rho.rho_l_prime(), rsl = rho.rho_sup_l();
  const double vol = std::pow(grid.step, l);
  double log_ab = 0.0, delta_x = 0.0;
  if (l == 2) {
    if (eigs[1] <= 0.0 || eigs[0] < eigs[1])
      throw DomainError("rank-2 eigenvalues must be descending > 0");
    log_ab = std::log(eigs[0] * eigs[1]);
    delta_x = std::log(eigs[0] / eigs[1]);
  }
  Cplx acc(0.0, 0.0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    const WeightR& lam = nodes[i];
    Weight nu_gamma(l), mu(l);
    for (int j = 0; j < l; ++j) {
      nu_gamma[j] = Cplx(-rlp[j], -lam[j]);
      mu[j] = Cplx(rsl[j] - 0.25 * r * d, lam[j]);
    }
    Cplx phi = l == 2 ? std::exp(0.5 * (mu[0] + mu[1]) * log_ab) *
                            detail::rank2_angular(mu[0] - mu[1], delta_x, d)
                      : spherical_eval(eigs, mu, d).value;
    Cplx inv_gamma = std::exp(-log_gamma_quotient(nu_gamma, r, l, d));
    acc += tilde_values[i] * phi * inv_gamma * inv_c_squared(lam, l, d) * vol;
  }
  return c0 * acc;
}

// ---------------------------------------------------------------------------
// c0 calibration
// ---------------------------------------------------------------------------

// c0^(l) is fixed by requiring the inversion round trip to reproduce a
// Gaussian test function at the cone identity; the l = 1 value is the Mellin
// constant 1/(2 pi). The constant depends only on (l, d) and on the fixed
// invariant-measure convention of the radial rules.
inline double calibrate_c0(int l, int d) {
  static std::map<std::pair<int, int>, double> cache;
  auto key = std::make_pair(l, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  RadialFunction gauss{l,
                       [](const std::vector<double>& t) {
                         double s = 0.0;
                         for (double v : t) s += std::log(v) * std::log(v);
                         return Cplx(std::exp(-s), 0.0);
                       },
                       true};
  const int r_cal = l + 1;  // the rd/4 shifts cancel in the round trip
  TransformSpec tspec = default_transform_spec(l);
  LambdaGrid grid{l == 1 ? 16.0 : 9.0, l == 1 ? 0.05 : 0.25};
  FtEvaluator ft(gauss, d, tspec);
  auto tilde = tilde_on_grid(ft, grid, r_cal, d, l, true);
  std::vector<double> e(static_cast<size_t>(l), 1.0);
  double raw = invert_at(tilde, grid, e, r_cal, d, l, 1.0).real();
  double c0 = 1.0 / raw;  // gauss(e) = 1
  cache[key] = c0;
  return c0;
}

// ---------------------------------------------------------------------------
// Intertwining operator
// ---------------------------------------------------------------------------

namespace detail {
inline Weight shifted_parameter(const Weight& nu, int r, int d, int l) {
  // nu' = -(i nu + rho'_l)
  RhoVectors rho(r, d, l);
  WeightR rlp = rho.rho_l_prime();
  Weight out(l);
  for (int j = 0; j < l; ++j) out[j] = -(Cplx(0.0, 1.0) * nu[j] + Cplx(rlp[j], 0.0));
  return out;
}

inline bool in_convergence_region(const Weight& nu_prime) {
  for (size_t j = 0; j < nu_prime.size(); ++j) {
    if (nu_prime[j].real() < 0.0) return false;
    if (j + 1 < nu_prime.size() && nu_prime[j].real() < nu_prime[j + 1].real()) return false;
  }
  return true;
}
}  // namespace detail

// T_nu f(g) = int_{d_l Omega} f(x) Delta_{-(i nu + rho'_l)}(g^* x) dmu_l(x),
// only where the integral converges; outside, use the closed form.
inline IntegralResult intertwine_direct(const AlgebraDescriptor& desc, const BoundaryFn& f,
                                        const GroupElement& g, const Weight& nu, int l,
                                        const QuadratureSpec& spec) {
  const int r = desc.rank, d = desc.degree();
  Weight nu_prime = detail::shifted_parameter(nu, r, d, l);
  if (!detail::in_convergence_region(nu_prime))
    throw DomainError(
        "intertwining integral diverges for this parameter; "
        "use intertwine_closed_form");
  Weight nu_amb = pad_trailing(nu_prime, r);
  Mat a = adjoint(g).matrix;
  BoundaryFn integrand = [&f, a, nu_amb](const Mat& y, const std::vector<double>& t) {
    Mat z = a * y * a.adjoint();
    z = Cplx(0.5, 0.0) * (z + Mat(z.adjoint()));
    return f(y, t) * detail::power_function_impl(z, nu_amb);
  };
  return boundary_integral(desc, l, integrand, spec);
}

// For K-invariant f the operator has the closed form
//   T_nu f(g) = gamma^(l)_{nu'} f_hat(i nu - rd/4) Delta_{nu'}(g^* e),
// which is adopted as the definition beyond the convergence region.
inline Cplx intertwine_closed_form(const AlgebraDescriptor& desc, const FtEvaluator& ft,
                                   const GroupElement& g, const Weight& nu, int l) {
  const int r = desc.rank, d = desc.degree();
  Weight nu_prime = detail::shifted_parameter(nu, r, d, l);
  Cplx gamma = gamma_quotient(nu_prime, r, l, d);
  Weight arg(l);
  for (int j = 0; j < l; ++j) arg[j] = Cplx(0.0, 1.0) * nu[j] - 0.25 * r * d;
  Mat ge = g.matrix.adjoint() * g.matrix;  // g^* e
  return gamma * ft(arg) * detail::power_function_impl(ge, pad_trailing(nu_prime, r));
}

// ---------------------------------------------------------------------------
// Plancherel identity (Eq.-level check on K-invariant data)
// ---------------------------------------------------------------------------

struct PlancherelReport {
  double lhs = 0.0;  // int |f|^2 dmu_l
  double rhs = 0.0;  // int |f~|^2 dp(lambda)
  double rel_discrepancy = 0.0;
  double lambda_tail = 0.0;  // density-weighted share outside 3/4 of the cut
  bool pass = false;
};

inline PlancherelReport plancherel_check(const AlgebraDescriptor& desc,
                                         const RadialFunction& f, int l,
                                         const QuadratureSpec& qspec,
                                         const TransformSpec& tspec, const LambdaGrid& grid,
                                         double rtol, bool real_input = false) {
  const int r = desc.rank, d = desc.degree();
  RadialFunction f2{f.l,
                    [f](const std::vector<double>& t) {
                      return Cplx(std::norm(f.eval(t)), 0.0);
                    },
                    f.weyl_invariant};
  double lhs = radial_integral(f2, d, 0.5 * r * d, qspec).value.real();

  FtEvaluator ft(f, d, tspec);
  auto nodes = lambda_nodes(grid, l);
  auto tilde = tilde_on_grid(ft, grid, r, d, l, real_input);
  const double c0 = calibrate_c0(l, d);
  const double vol = std::pow(grid.step, l);
  double rhs = 0.0, outer = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const WeightR& lam = nodes[i];
    double contrib = std::norm(tilde[i]) * plancherel_density(lam, r, l, d, c0) * vol;
    rhs += contrib;
    for (double a : lam)
      if (std::abs(a) > 0.75 * grid.cut) {
        outer += contrib;
        break;
      }
  }
  PlancherelReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.lambda_tail = outer / std::max(1e-300, rhs);
  rep.rel_discrepancy = std::abs(lhs - rhs) / std::max(1e-300, std::abs(lhs));
  rep.pass = rep.rel_discrepancy <= rtol;
  return rep;
}

}  // namespace cone
