#pragma once

#include <cmath>
#include <thread>
#include <vector>

#include "cone/geometry.hpp"
#include "cone/jordan.hpp"
#include "cone/quadrature.hpp"
#include "cone/rng.hpp"
#include "cone/special.hpp"
#include "cone/types.hpp"

namespace cone {

struct McResult {
  Cplx value;
  double stderr_ = 0.0;
  size_t n = 0;
};

namespace detail {

struct McAccumulator {
  Cplx sum{0.0, 0.0};
  double sum_sq = 0.0;  // sum of |v|^2
  size_t n = 0;

  void add(Cplx v) {
    sum += v;
    sum_sq += std::norm(v);
    ++n;
  }
  void merge(const McAccumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  McResult result() const {
    McResult r;
    r.n = n;
    r.value = sum / static_cast<double>(n);
    if (n > 1) {
      double var = (sum_sq / n - std::norm(r.value)) / (n - 1.0);
      r.stderr_ = std::sqrt(std::max(0.0, var));
    }
    return r;
  }
};

}  // namespace detail

// Phi_nu(x) = int_K Delta_nu(kx) dk by Haar Monte Carlo. Shards are merged in
// shard order, so the result is bitwise reproducible for fixed (seed, threads).
inline McResult spherical_mc(const AlgebraElement& x, const Weight& nu, size_t n,
                             uint64_t seed, int threads = 1) {
  if (n < 1000) throw DomainError("spherical_mc: need at least 10^3 samples");
  if (threads < 1) threads = 1;
  const size_t shards = static_cast<size_t>(threads);
  std::vector<detail::McAccumulator> acc(shards);

  auto run_shard = [&](size_t s) {
    RandomStream rng(seed, s);
    const size_t lo = n * s / shards, hi = n * (s + 1) / shards;
    Mat y(x.algebra.rank, x.algebra.rank);
    for (size_t i = lo; i < hi; ++i) {
      GroupElement k = haar_sample(rng, x.algebra);
      y.noalias() = k.matrix * x.data * k.matrix.adjoint();
      acc[s].add(detail::power_function_impl(y, nu));
    }
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t s = 0; s < shards; ++s) pool.emplace_back(run_shard, s);
    for (auto& t : pool) t.join();
  }
  detail::McAccumulator total;
  for (const auto& a : acc) total.merge(a);
  return total.result();
}

// ---------------------------------------------------------------------------
// Rank <= 2 deterministic evaluation
// ---------------------------------------------------------------------------

// Rank-2 spherical function at x = diag(a, b): the K-integral collapses to a
// single angular integral. d = 1: average over SO(2); d = 2: the top-left
// entry of u x u^* has |u_11|^2 uniform on [0,1].
inline Cplx spherical_quadrature_rank2(double a, double b, const Weight& nu, int d,
                                       int panels = 8) {
  if (nu.size() != 2) throw StructuralError("rank-2 weight expected");
  if (!(a >= b && b >= 0.0) || (b == 0.0 && nu[1] != Cplx(0.0, 0.0)))
    throw DomainError("rank-2 quadrature needs a >= b > 0 (or b = 0 with trailing-zero nu)");
  if (b == 0.0 && nu[0].real() < 0.0)
    throw DomainError("boundary evaluation needs Re nu >= 0");
  const Cplx z = nu[0] - nu[1];
  Cplx inner;
  if (d == 1) {
    inner = adaptive_panel_integrate(
        [&](double theta) {
          double c = std::cos(theta), s = std::sin(theta);
          double base = a * c * c + b * s * s;
          return base > 0.0 ? std::exp(z * std::log(base)) : Cplx(0.0, 0.0);
        },
        0.0, 0.5 * M_PI, panels, 16);
    inner *= 2.0 / M_PI;
  } else if (d == 2) {
    inner = adaptive_panel_integrate(
        [&](double u) {
          double base = a * u + b * (1.0 - u);
          return base > 0.0 ? std::exp(z * std::log(base)) : Cplx(0.0, 0.0);
        },
        0.0, 1.0, panels, 16);
  } else {
    throw DomainError("degree must be 1 or 2");
  }
  if (nu[1] == Cplx(0.0, 0.0)) return inner;
  return inner * std::exp(nu[1] * std::log(a * b));
}

// Spherical function of a rank-l cone at eigenvalues t (descending): exact at
// l = 1, angular quadrature at l = 2, Monte Carlo above.
inline McResult spherical_eval(const std::vector<double>& t, const Weight& nu, int d,
                               size_t mc_samples = 200000, uint64_t seed = 99) {
  const int l = static_cast<int>(t.size());
  if (static_cast<int>(nu.size()) != l) throw StructuralError("weight/eigenvalue length mismatch");
  if (l == 1) {
    if (t[0] <= 0.0) throw DomainError("rank-1 cone point must be positive");
    return McResult{std::exp(nu[0] * std::log(t[0])), 0.0, 0};
  }
  if (l == 2) return McResult{spherical_quadrature_rank2(t[0], t[1], nu, d), 0.0, 0};
  AlgebraDescriptor desc =
      make_descriptor(d == 1 ? Model::RealSymmetric : Model::ComplexHermitian, l);
  return spherical_mc(diagonal_element(desc, t), nu, mc_samples, seed);
}

// ---------------------------------------------------------------------------
// The restriction identity (spherical function of Omega at a boundary point)
// ---------------------------------------------------------------------------

struct RestrictionReport {
  Cplx lhs;          // Phi_nu(x), x in Omega^(l), by Monte Carlo on K
  Cplx rhs;          // gamma^(l)_nu * Phi^(l)_nu(x)
  Cplx gamma;        // the Gamma-quotient factor
  double stderr_lhs = 0.0;
  double stderr_rhs = 0.0;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;
  bool pass = false;
};

// Checks Phi_nu(x) = gamma^(l)_nu Phi^(l)_nu(x) for x in Omega^(l), nu with
// Re nu decreasing >= 0, padded by r - l zeros on the ambient side.
inline RestrictionReport verify_restriction_identity(int r, int d, int l, const Weight& nu,
                                                     const std::vector<double>& eigs,
                                                     size_t n, uint64_t seed,
                                                     double rtol = 0.01, int threads = 1) {
  if (static_cast<int>(nu.size()) != l || static_cast<int>(eigs.size()) != l)
    throw StructuralError("nu and x must live on the rank-l cone");
  for (int j = 0; j < l; ++j) {
    if (nu[j].real() < 0.0 || (j + 1 < l && nu[j].real() < nu[j + 1].real()))
      throw DomainError("need Re nu_1 >= ... >= Re nu_l >= 0");
    if (eigs[j] <= 0.0) throw DomainError("x must lie in the open rank-l cone");
  }
  AlgebraDescriptor big =
      make_descriptor(d == 1 ? Model::RealSymmetric : Model::ComplexHermitian, r);
  AlgebraElement x_big = diagonal_element(big, eigs);

  RestrictionReport rep;
  McResult lhs = spherical_mc(x_big, pad_trailing(nu, r), n, seed, threads);
  McResult rhs_small = spherical_eval(eigs, nu, d, std::max<size_t>(n, 100000), seed + 1);
  rep.gamma = gamma_quotient(nu, r, l, d);
  rep.lhs = lhs.value;
  rep.rhs = rep.gamma * rhs_small.value;
  rep.stderr_lhs = lhs.stderr_;
  rep.stderr_rhs = std::abs(rep.gamma) * rhs_small.stderr_;
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rep.abs_discrepancy / std::max(1e-300, std::abs(rep.lhs));
  double comb = std::hypot(rep.stderr_lhs, rep.stderr_rhs);
  rep.pass = rep.abs_discrepancy <= std::max(3.0 * comb, rtol * std::abs(rep.lhs));
  return rep;
}

// Spherical parameter of pi_nu: i nu + eta_l + rho, length r (nu zero-padded).
inline Weight pi_spherical_parameter(const Weight& nu, int r, int d, int l) {
  if (static_cast<int>(nu.size()) != l) throw StructuralError("nu must have length l");
  RhoVectors rv(r, d, l);
  WeightR eta = rv.eta_l(), rho = rv.rho();
  Weight out(r);
  for (int j = 0; j < r; ++j) {
    Cplx base = j < l ? Cplx(0.0, 1.0) * nu[j] : Cplx(0.0, 0.0);
    out[j] = base + eta[j] + rho[j];
  }
  return out;
}

}  // namespace cone
