#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cone/types.hpp"

namespace cone {

// ---------------------------------------------------------------------------
// Complex log-Gamma (Lanczos, g = 7, 9 terms; reflection for Re z < 1/2)
// ---------------------------------------------------------------------------

namespace detail {
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoef[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline void check_gamma_pole(Cplx z) {
  if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-6) {
    double n = std::round(z.real());
    if (n <= 0.0 && std::abs(z.real() - n) < 1e-6)
      throw PoleError("Gamma pole at z = " + std::to_string(static_cast<long>(n)),
                      static_cast<long>(n));
  }
}
}  // namespace detail

inline Cplx log_gamma(Cplx z) {
  detail::check_gamma_pole(z);
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma(Cplx(1.0, 0.0) - z);
  }
  Cplx zz = z - 1.0;
  Cplx x = detail::kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) x += detail::kLanczosCoef[i] / (zz + static_cast<double>(i));
  Cplx t = zz + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

inline Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

// ---------------------------------------------------------------------------
// Rho-shift vectors
// ---------------------------------------------------------------------------

// All half-sum vectors attached to (r, d, l), in the delta_j basis with the
// d/4 normalization (the half sum of roots (delta_j - delta_i)/2, each of
// multiplicity d).
struct RhoVectors {
  int r;
  int d;
  int l;

  RhoVectors(int rank, int degree, int orbit) : r(rank), d(degree), l(orbit) {
    if (l < 1 || l > r) throw DomainError("orbit index out of range");
  }

  // rho[j] = (d/4)(2j - r - 1), j = 1..r
  WeightR rho() const {
    WeightR v(r);
    for (int j = 1; j <= r; ++j) v[j - 1] = 0.25 * d * (2 * j - r - 1);
    return v;
  }
  // rho_l[j] = (d/4)(r + 1 - 2j), j = 1..l
  WeightR rho_l() const {
    WeightR v(l);
    for (int j = 1; j <= l; ++j) v[j - 1] = 0.25 * d * (r + 1 - 2 * j);
    return v;
  }
  // rho'_l = rho_l + ld/4
  WeightR rho_l_prime() const {
    WeightR v(l);
    for (int j = 1; j <= l; ++j) v[j - 1] = 0.25 * d * (r + l + 1 - 2 * j);
    return v;
  }
  // rho^(l)[j] = (d/4)(2j - l - 1), j = 1..l
  WeightR rho_sup_l() const {
    WeightR v(l);
    for (int j = 1; j <= l; ++j) v[j - 1] = 0.25 * d * (2 * j - l - 1);
    return v;
  }
  // eta_l[j] = (d/4)(2j - l - r - 1) for j > l, zero otherwise; length r
  WeightR eta_l() const {
    WeightR v(r, 0.0);
    for (int j = l + 1; j <= r; ++j) v[j - 1] = 0.25 * d * (2 * j - l - r - 1);
    return v;
  }
};

// ---------------------------------------------------------------------------
// Gindikin Gamma function of a rank-l cone
// ---------------------------------------------------------------------------

inline Cplx log_gindikin_gamma(const Weight& nu, int l, int d) {
  if (static_cast<int>(nu.size()) != l)
    throw StructuralError("gindikin: weight length must equal l");
  Cplx acc = 0.25 * l * (l - 1) * d * std::log(2.0 * M_PI);
  for (int j = 1; j <= l; ++j) acc += log_gamma(nu[j - 1] - 0.5 * d * (j - 1));
  return acc;
}

inline Cplx gindikin_gamma(const Weight& nu, int l, int d) {
  return std::exp(log_gindikin_gamma(nu, l, d));
}

// gamma^(l)_nu of the restriction identity:
//   Gamma_{O^(l)}(rd/2) Gamma_{O^(l)}(nu + ld/2)
//   ------------------------------------------- ,  scalar shifts per component.
//   Gamma_{O^(l)}(ld/2) Gamma_{O^(l)}(nu + rd/2)
inline Cplx log_gamma_quotient(const Weight& nu, int r, int l, int d) {
  if (static_cast<int>(nu.size()) != l)
    throw StructuralError("gamma_quotient: weight length must equal l");
  Weight rd2 = constant_weight(0.5 * r * d, l);
  Weight ld2 = constant_weight(0.5 * l * d, l);
  return log_gindikin_gamma(rd2, l, d) + log_gindikin_gamma(shifted(nu, 0.5 * l * d), l, d) -
         log_gindikin_gamma(ld2, l, d) - log_gindikin_gamma(shifted(nu, 0.5 * r * d), l, d);
}

inline Cplx gamma_quotient(const Weight& nu, int r, int l, int d) {
  return std::exp(log_gamma_quotient(nu, r, l, d));
}

// ---------------------------------------------------------------------------
// Harish-Chandra c-function for a rank-l cone
// ---------------------------------------------------------------------------

// Gindikin-Karpelevich product over the positive restricted roots
// (delta_k - delta_j)/2, j < k <= l, each of multiplicity d:
//   c(lambda) = prod_{j<k} Gamma(i(lambda_j - lambda_k)) /
//                          Gamma(i(lambda_j - lambda_k) + d/2),
// normalized so the empty product is 1 (absolute scale lives in c0^(l)).
inline Cplx harish_chandra_c(const Weight& lambda, int l, int d) {
  if (static_cast<int>(lambda.size()) != l)
    throw StructuralError("c-function: weight length must equal l");
  Cplx acc(0.0, 0.0);
  for (int j = 0; j < l; ++j)
    for (int k = j + 1; k < l; ++k) {
      Cplx z = Cplx(0.0, 1.0) * (lambda[j] - lambda[k]);
      acc += log_gamma(z) - log_gamma(z + 0.5 * d);
    }
  return std::exp(acc);
}

// 1/|c(lambda)|^2 for real lambda; the lambda_j = lambda_k limit is 0.
inline double inv_c_squared(const WeightR& lambda, int l, int d) {
  if (static_cast<int>(lambda.size()) != l)
    throw StructuralError("c-function: weight length must equal l");
  double log_acc = 0.0;
  for (int j = 0; j < l; ++j)
    for (int k = j + 1; k < l; ++k) {
      double diff = lambda[j] - lambda[k];
      if (std::abs(diff) < 1e-300) return 0.0;
      Cplx z(0.0, diff);
      log_acc += 2.0 * (log_gamma(z + 0.5 * d).real() - log_gamma(z).real());
    }
  return std::exp(log_acc);
}

// ---------------------------------------------------------------------------
// Plancherel density
// ---------------------------------------------------------------------------

// dp(lambda)/dlambda = c0 / |gamma^(l)_{-(i lambda + rho'_l)} c^(l)(lambda)|^2.
// A pole of the gamma quotient gives the continuous limit 0; a zero of the
// quotient (denominator Gamma pole) would make the density blow up and is
// reported as an error.
inline double plancherel_density(const WeightR& lambda, int r, int l, int d,
                                 double c0 = 1.0) {
  if (static_cast<int>(lambda.size()) != l)
    throw StructuralError("density: weight length must equal l");
  RhoVectors rho(r, d, l);
  WeightR rlp = rho.rho_l_prime();
  Weight nu(l);
  for (int j = 0; j < l; ++j) nu[j] = Cplx(-rlp[j], -lambda[j]);

  double log_num;  // log |Gamma(rd/2) Gamma(nu + ld/2)|^2 part of gamma
  try {
    log_num = 2.0 * (log_gindikin_gamma(constant_weight(0.5 * r * d, l), l, d).real() +
                     log_gindikin_gamma(shifted(nu, 0.5 * l * d), l, d).real());
  } catch (const PoleError&) {
    return 0.0;  // |gamma| = infinity: density vanishes in the limit
  }
  double log_den = 2.0 * (log_gindikin_gamma(constant_weight(0.5 * l * d, l), l, d).real() +
                          log_gindikin_gamma(shifted(nu, 0.5 * r * d), l, d).real());
  double inv_gamma_sq = std::exp(log_den - log_num);
  return c0 * inv_gamma_sq * inv_c_squared(lambda, l, d);
}

}  // namespace cone
