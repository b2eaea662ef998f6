#pragma once

#include <cmath>
#include <vector>

#include "cone/types.hpp"

namespace cone {

inline AlgebraElement unit_element(const AlgebraDescriptor& desc) {
  return AlgebraElement(desc, Mat::Identity(desc.rank, desc.rank), false);
}

// Frame idempotent c_j (1-based), the j-th diagonal matrix unit.
inline AlgebraElement frame_idempotent(const AlgebraDescriptor& desc, int j) {
  if (j < 1 || j > desc.rank) throw StructuralError("frame index out of range");
  Mat m = Mat::Zero(desc.rank, desc.rank);
  m(j - 1, j - 1) = 1.0;
  return AlgebraElement(desc, m, false);
}

// e_l = c_1 + ... + c_l.
inline AlgebraElement rank_idempotent(const AlgebraDescriptor& desc, int l) {
  if (l < 0 || l > desc.rank) throw StructuralError("idempotent rank out of range");
  Mat m = Mat::Zero(desc.rank, desc.rank);
  for (int j = 0; j < l; ++j) m(j, j) = 1.0;
  return AlgebraElement(desc, m, false);
}

// Trace form <x,y> = tr_V(x o y); real for Hermitian arguments.
inline double trace_form(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  return (x.data * y.data).trace().real();
}

// x o y = (xy + yx)/2.
inline AlgebraElement jordan_product(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  Mat m = 0.5 * (x.data * y.data + y.data * x.data);
  return AlgebraElement(x.algebra, m, false);
}

// P(x)y = 2 x o (x o y) - (x o x) o y; equals x y x in the matrix model.
inline AlgebraElement quadratic_rep(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  Mat m = x.data * y.data * x.data;
  // Hermitian up to round-off; symmetrize so downstream invariants hold exactly.
  m = Cplx(0.5, 0.0) * (m + Mat(m.adjoint()));
  return AlgebraElement(x.algebra, m, false);
}

inline SpectralData spectral_decomposition(const AlgebraElement& x) {
  x.check();
  const int r = x.algebra.rank;
  SpectralData sd;
  if (x.algebra.model == Model::RealSymmetric) {
    Eigen::SelfAdjointEigenSolver<MatR> es(x.data.real());
    if (es.info() != Eigen::Success) throw StructuralError("eigendecomposition failed");
    MatR k = es.eigenvectors();
    VecR lam = es.eigenvalues();
    // Eigen sorts ascending; we fix descending order.
    sd.eigenvalues = lam.reverse();
    MatR kk(r, r);
    for (int j = 0; j < r; ++j) kk.col(j) = k.col(r - 1 - j);
    if (kk.determinant() < 0) kk.col(r - 1) *= -1.0;  // stay inside SO(r)
    sd.rotation = kk.cast<Cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Mat> es(x.data);
    if (es.info() != Eigen::Success) throw StructuralError("eigendecomposition failed");
    Mat k = es.eigenvectors();
    VecR lam = es.eigenvalues();
    sd.eigenvalues = lam.reverse();
    Mat kk(r, r);
    for (int j = 0; j < r; ++j) kk.col(j) = k.col(r - 1 - j);
    sd.rotation = kk;
  }
  return sd;
}

inline AlgebraElement reconstruct(const AlgebraDescriptor& desc, const SpectralData& sd) {
  Mat diag = Mat::Zero(desc.rank, desc.rank);
  for (int j = 0; j < desc.rank; ++j) diag(j, j) = sd.eigenvalues[j];
  Mat m = sd.rotation * diag * sd.rotation.adjoint();
  m = Cplx(0.5, 0.0) * (m + Mat(m.adjoint()));
  return AlgebraElement(desc, m, false);
}

// (tr x, Delta(x)).
inline std::pair<double, double> trace_det(const AlgebraElement& x) {
  return {x.data.trace().real(), x.data.determinant().real()};
}

// Number of eigenvalues above 1e-10 * max|lambda| in absolute value.
inline int rank_of(const AlgebraElement& x) {
  SpectralData sd = spectral_decomposition(x);
  double tol = 1e-10 * std::max(1e-300, sd.eigenvalues.cwiseAbs().maxCoeff());
  int n = 0;
  for (int j = 0; j < x.algebra.rank; ++j)
    if (std::abs(sd.eigenvalues[j]) > tol) ++n;
  return n;
}

// Peirce projection P(e_l)x: the leading l x l block, embedded back into V.
inline AlgebraElement peirce_project(const AlgebraElement& x, int l) {
  if (l < 1 || l > x.algebra.rank) throw DomainError("peirce index out of range");
  Mat m = Mat::Zero(x.algebra.rank, x.algebra.rank);
  m.topLeftCorner(l, l) = x.data.topLeftCorner(l, l);
  return AlgebraElement(x.algebra, m, false);
}

inline bool in_cone(const AlgebraElement& x) {
  SpectralData sd = spectral_decomposition(x);
  double tol = 1e-10 * std::max(1e-300, sd.eigenvalues.cwiseAbs().maxCoeff());
  return sd.eigenvalues.minCoeff() > tol;
}

inline AlgebraElement element_inverse(const AlgebraElement& x) {
  if (std::abs(x.data.determinant()) < 1e-13)
    throw DomainError("element is not invertible");
  Mat m = x.data.inverse();
  m = Cplx(0.5, 0.0) * (m + Mat(m.adjoint()));
  return AlgebraElement(x.algebra, m, false);
}

// Sub-algebra V^(l) = V(e_l, 1) and the embedding back into V.
inline AlgebraDescriptor subalgebra(const AlgebraDescriptor& desc, int l) {
  return make_descriptor(desc.model, l);
}

inline AlgebraElement restrict_to_block(const AlgebraElement& x, int l) {
  AlgebraDescriptor sub = subalgebra(x.algebra, l);
  return AlgebraElement(sub, x.data.topLeftCorner(l, l), false);
}

inline AlgebraElement embed_block(const AlgebraElement& xs, const AlgebraDescriptor& big) {
  if (xs.algebra.model != big.model || xs.algebra.rank > big.rank)
    throw StructuralError("cannot embed element into target algebra");
  Mat m = Mat::Zero(big.rank, big.rank);
  m.topLeftCorner(xs.algebra.rank, xs.algebra.rank) = xs.data;
  return AlgebraElement(big, m, false);
}

inline AlgebraElement diagonal_element(const AlgebraDescriptor& desc,
                                       const std::vector<double>& t) {
  if (static_cast<int>(t.size()) > desc.rank)
    throw StructuralError("too many diagonal entries");
  Mat m = Mat::Zero(desc.rank, desc.rank);
  for (size_t j = 0; j < t.size(); ++j) m(j, j) = t[j];
  return AlgebraElement(desc, m, false);
}

// Orthonormal basis of V for the trace form (used by structure checks).
inline std::vector<AlgebraElement> trace_form_basis(const AlgebraDescriptor& desc) {
  std::vector<AlgebraElement> basis;
  const int r = desc.rank;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < r; ++i) {
    Mat m = Mat::Zero(r, r);
    m(i, i) = 1.0;
    basis.emplace_back(desc, m, false);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Mat m = Mat::Zero(r, r);
      m(i, j) = s;
      m(j, i) = s;
      basis.emplace_back(desc, m, false);
      if (desc.model == Model::ComplexHermitian) {
        Mat h = Mat::Zero(r, r);
        h(i, j) = Cplx(0.0, s);
        h(j, i) = Cplx(0.0, -s);
        basis.emplace_back(desc, h, false);
      }
    }
  return basis;
}

}  // namespace cone
