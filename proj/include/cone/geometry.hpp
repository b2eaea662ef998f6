#pragma once

#include <cmath>
#include <string>

#include "cone/jordan.hpp"
#include "cone/rng.hpp"
#include "cone/types.hpp"

namespace cone {

// ---------------------------------------------------------------------------
// Principal minors and the generalized power function
// ---------------------------------------------------------------------------

// Delta_(j)(x), the determinant of the leading j x j block. Real in both models.
inline double principal_minor(const AlgebraElement& x, int j) {
  if (j < 1 || j > x.algebra.rank) throw DomainError("minor index out of range");
  return x.data.topLeftCorner(j, j).determinant().real();
}

namespace detail {

// Delta_nu on a raw matrix. Minors of positive semidefinite arguments may come
// out slightly negative from round-off; values <= 0 are treated as the
// boundary value 0 and resolved by the sign of the exponent's real part.
inline Cplx power_function_impl(const Mat& m, const Weight& nu) {
  const int r = static_cast<int>(m.rows());
  if (static_cast<int>(nu.size()) != r)
    throw StructuralError("weight length does not match rank");
  Cplx log_acc(0.0, 0.0);
  for (int j = 1; j <= r; ++j) {
    Cplx z = nu[j - 1] - (j < r ? nu[j] : Cplx(0.0, 0.0));
    if (z == Cplx(0.0, 0.0)) continue;
    double minor = m.topLeftCorner(j, j).determinant().real();
    if (minor <= 0.0) {
      if (z.real() > 0.0) return Cplx(0.0, 0.0);  // continuous extension
      throw DomainError("power function: nonpositive minor Delta_(" +
                        std::to_string(j) + ") with non-attenuating exponent");
    }
    log_acc += z * std::log(minor);
  }
  return std::exp(log_acc);
}

}  // namespace detail

// Delta_nu(x) = prod_j Delta_(j)(x)^{nu_j - nu_{j+1}}, principal branch,
// with the continuous extension to the boundary stratum for trailing-zero nu.
inline Cplx power_function(const AlgebraElement& x, const Weight& nu) {
  return detail::power_function_impl(x.data, nu);
}

// ---------------------------------------------------------------------------
// The group G = GL_0(Omega)
// ---------------------------------------------------------------------------

// g acts on V by x -> a x a^*.
struct GroupElement {
  AlgebraDescriptor algebra;
  Mat matrix;

  GroupElement() = default;
  GroupElement(const AlgebraDescriptor& desc, const Mat& a, bool validate = true)
      : algebra(desc), matrix(a) {
    if (validate) check();
  }

  void check() const {
    if (matrix.rows() != algebra.rank || matrix.cols() != algebra.rank)
      throw StructuralError("group element size mismatch");
    if (std::abs(matrix.determinant()) <= 1e-12)
      throw DomainError("group element is singular");
    if (algebra.model == Model::RealSymmetric &&
        matrix.imag().cwiseAbs().maxCoeff() >
            1e-12 * std::max(1.0, matrix.cwiseAbs().maxCoeff()))
      throw StructuralError("real-model group element has a complex part");
  }
};

inline GroupElement identity_group_element(const AlgebraDescriptor& desc) {
  return GroupElement(desc, Mat::Identity(desc.rank, desc.rank), false);
}

inline AlgebraElement act(const GroupElement& g, const AlgebraElement& x) {
  if (g.algebra != x.algebra) throw StructuralError("group/element algebra mismatch");
  Mat m = g.matrix * x.data * g.matrix.adjoint();
  m = Cplx(0.5, 0.0) * (m + Mat(m.adjoint()));
  return AlgebraElement(x.algebra, m, false);
}

// Trace-form adjoint g^*: x -> a^* x a.
inline GroupElement adjoint(const GroupElement& g) {
  return GroupElement(g.algebra, g.matrix.adjoint(), false);
}

// Theta(g) = g^{-*}.
inline GroupElement inverse_adjoint(const GroupElement& g) {
  return GroupElement(g.algebra, g.matrix.adjoint().inverse(), false);
}

inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.algebra != h.algebra) throw StructuralError("group algebra mismatch");
  return GroupElement(g.algebra, g.matrix * h.matrix, false);
}

inline GroupElement group_inverse(const GroupElement& g) {
  return GroupElement(g.algebra, g.matrix.inverse(), false);
}

// Delta(g) := Delta(ge) = |det a|^2.
inline double group_character(const GroupElement& g) {
  double d = std::abs(g.matrix.determinant());
  return d * d;
}

// e^{nu . log a(g)} = Delta_nu(ge).
inline Cplx iwasawa_character(const GroupElement& g, const Weight& nu) {
  return power_function(act(g, unit_element(g.algebra)), nu);
}

// ---------------------------------------------------------------------------
// Random group elements
// ---------------------------------------------------------------------------

namespace detail {

inline Mat gaussian_matrix(RandomStream& rng, const AlgebraDescriptor& desc) {
  const int r = desc.rank;
  Mat m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (desc.model == Model::RealSymmetric)
        m(i, j) = rng.gaussian();
      else
        m(i, j) = Cplx(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
    }
  return m;
}

}  // namespace detail

// Haar-distributed element of SO(r) (d=1) or U(r) (d=2): QR of a Gaussian
// matrix with the R-diagonal phase correction that makes the law exactly Haar;
// in the real model the determinant is corrected to +1 by a column flip.
inline GroupElement haar_sample(RandomStream& rng, const AlgebraDescriptor& desc) {
  const int r = desc.rank;
  Mat g = detail::gaussian_matrix(rng, desc);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(r, r);
  Mat rm = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    Cplx d = rm(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Cplx(1.0, 0.0));
  }
  if (desc.model == Model::RealSymmetric) {
    Mat qq = q.real().cast<Cplx>();
    if (qq.real().determinant() < 0) qq.col(r - 1) *= -1.0;
    return GroupElement(desc, qq, false);
  }
  return GroupElement(desc, q, false);
}

// Element of NA: unit lower-triangular times positive diagonal, entries at the
// given scale. Leading minors are multiplicative under its action.
inline GroupElement random_triangular(RandomStream& rng, const AlgebraDescriptor& desc,
                                      double scale) {
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  const int r = desc.rank;
  Mat m = Mat::Zero(r, r);
  for (int j = 0; j < r; ++j) m(j, j) = std::exp(scale * rng.gaussian());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < i; ++j) {
      if (desc.model == Model::RealSymmetric)
        m(i, j) = scale * rng.gaussian();
      else
        m(i, j) = scale * Cplx(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
    }
  return GroupElement(desc, m, false);
}

// Generic well-conditioned element of G (test plumbing).
inline GroupElement random_group_element(RandomStream& rng, const AlgebraDescriptor& desc,
                                         double scale = 0.3) {
  const int r = desc.rank;
  Mat m = Mat::Identity(r, r) + scale * detail::gaussian_matrix(rng, desc);
  while (std::abs(m.determinant()) < 0.1)
    m = Mat::Identity(r, r) + scale * detail::gaussian_matrix(rng, desc);
  return GroupElement(desc, m, false);
}

// Random interior cone point with eigenvalues in [lo, hi], Haar-rotated.
inline AlgebraElement random_cone_point(RandomStream& rng, const AlgebraDescriptor& desc,
                                        double lo = 0.5, double hi = 2.0) {
  std::vector<double> t(desc.rank);
  for (auto& v : t) v = lo + (hi - lo) * rng.uniform();
  GroupElement k = haar_sample(rng, desc);
  return act(k, diagonal_element(desc, t));
}

}  // namespace cone
