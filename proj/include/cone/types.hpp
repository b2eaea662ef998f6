#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cone {

using Cplx = std::complex<double>;

// Weights nu = (nu_1, ..., nu_k) in the delta_j basis, k = l or r.
using Weight = std::vector<Cplx>;
using WeightR = std::vector<double>;

constexpr int kMaxRank = 4;

// Stack-allocated small matrices; every algebra here has rank <= 4.
using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxRank, kMaxRank>;
using MatR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxRank, kMaxRank>;
using VecR = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxRank, 1>;

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A Gamma factor was evaluated too close to one of its poles.
struct PoleError : std::domain_error {
  PoleError(const std::string& msg, long pole) : std::domain_error(msg), location(pole) {}
  long location;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Model { RealSymmetric, ComplexHermitian };

// Structure constants of a simple Euclidean Jordan algebra in one of the two
// matrix models: Sym(r,R) with degree 1 or Herm(r,C) with degree 2. The Jordan
// frame is fixed to the diagonal matrix units.
struct AlgebraDescriptor {
  Model model = Model::RealSymmetric;
  int rank = 2;

  int degree() const { return model == Model::RealSymmetric ? 1 : 2; }
  int dim() const { return rank + rank * (rank - 1) * degree() / 2; }

  bool operator==(const AlgebraDescriptor& o) const {
    return model == o.model && rank == o.rank;
  }
  bool operator!=(const AlgebraDescriptor& o) const { return !(*this == o); }
};

inline AlgebraDescriptor make_descriptor(Model model, int rank) {
  if (rank < 1 || rank > kMaxRank)
    throw StructuralError("rank must lie in [1," + std::to_string(kMaxRank) + "]");
  return AlgebraDescriptor{model, rank};
}

// An element x of V, stored as an r x r symmetric/Hermitian matrix.
struct AlgebraElement {
  AlgebraDescriptor algebra;
  Mat data;

  AlgebraElement() = default;
  AlgebraElement(const AlgebraDescriptor& desc, const Mat& m, bool validate = true)
      : algebra(desc), data(m) {
    if (validate) check();
  }

  void check() const {
    if (data.rows() != algebra.rank || data.cols() != algebra.rank)
      throw StructuralError("element size does not match descriptor rank");
    const double scale = std::max(1.0, data.cwiseAbs().maxCoeff());
    if ((data - data.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw StructuralError("element is not Hermitian within tolerance");
    if (algebra.model == Model::RealSymmetric &&
        data.imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw StructuralError("real-symmetric element has a complex part");
  }
};

// x = k (sum_j lambda_j c_j) k^*, eigenvalues sorted descending.
struct SpectralData {
  VecR eigenvalues;
  Mat rotation;
};

inline void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.algebra != y.algebra)
    throw StructuralError("elements belong to different algebras");
}

// --- small weight helpers -------------------------------------------------

inline Weight to_weight(const WeightR& v) {
  Weight w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = Cplx(v[i], 0.0);
  return w;
}

// Zero-pad on the right to length k (embedding of (a_l)* into (a_r)*).
inline Weight pad_trailing(const Weight& nu, int k) {
  Weight w(nu);
  w.resize(static_cast<size_t>(k), Cplx(0.0, 0.0));
  return w;
}

// Scalar shift convention: nu + alpha = (nu_1 + alpha, ..., nu_k + alpha).
inline Weight shifted(const Weight& nu, Cplx alpha) {
  Weight w(nu);
  for (auto& c : w) c += alpha;
  return w;
}

inline Weight constant_weight(Cplx alpha, int k) {
  return Weight(static_cast<size_t>(k), alpha);
}

inline Weight times_i(const WeightR& lambda) {
  Weight w(lambda.size());
  for (size_t j = 0; j < lambda.size(); ++j) w[j] = Cplx(0.0, lambda[j]);
  return w;
}

inline Weight negated(const Weight& nu) {
  Weight w(nu);
  for (auto& c : w) c = -c;
  return w;
}

inline Weight add(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw StructuralError("weight length mismatch");
  Weight w(a);
  for (size_t j = 0; j < w.size(); ++j) w[j] += b[j];
  return w;
}

}  // namespace cone
