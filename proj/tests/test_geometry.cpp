#include <catch2/catch_amalgamated.hpp>

#include "cone/cone.hpp"

using namespace cone;
using Catch::Approx;

namespace {

const std::vector<AlgebraDescriptor> kAlgebras = {
    make_descriptor(Model::RealSymmetric, 2), make_descriptor(Model::RealSymmetric, 3),
    make_descriptor(Model::ComplexHermitian, 2), make_descriptor(Model::ComplexHermitian, 3)};

}  // namespace

TEST_CASE("principal minors of a frozen matrix") {
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  Mat m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  AlgebraElement x(desc, m);
  CHECK(principal_minor(x, 1) == Approx(2.0));
  CHECK(principal_minor(x, 2) == Approx(3.0));
}

TEST_CASE("power function on frozen inputs") {
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  Mat m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  AlgebraElement x(desc, m);
  // Delta_(2,1) = minor1^{2-1} * minor2^{1} = 2 * 3
  CHECK(power_function(x, {Cplx(2, 0), Cplx(1, 0)}).real() == Approx(6.0));
  // Diagonal case: Delta_(2,1)(diag(2,1)) = 2^1 * 2^1
  CHECK(power_function(diagonal_element(desc, {2.0, 1.0}), {Cplx(2, 0), Cplx(1, 0)}).real() ==
        Approx(4.0));
  // Complex exponents: |Delta_(iw)| = 1 on positive minors
  Cplx v = power_function(x, {Cplx(0, 1.5), Cplx(0, -0.5)});
  CHECK(std::abs(v) == Approx(1.0));
}

TEST_CASE("power function is multiplicative over scalar weights") {
  RandomStream rng(5);
  auto desc = make_descriptor(Model::ComplexHermitian, 3);
  AlgebraElement x = random_cone_point(rng, desc);
  // Delta_{(s,s,s)}(x) = det(x)^s
  Cplx v = power_function(x, constant_weight(Cplx(0.7, 0.3), 3));
  auto [tr, det] = trace_det(x);
  Cplx want = std::exp(Cplx(0.7, 0.3) * std::log(det));
  CHECK(std::abs(v - want) < 1e-12 * std::abs(want));
}

TEST_CASE("group action preserves the cone and composes") {
  RandomStream rng(7);
  for (const auto& desc : kAlgebras) {
    AlgebraElement x = random_cone_point(rng, desc);
    GroupElement g = random_group_element(rng, desc);
    GroupElement h = random_group_element(rng, desc);
    CHECK(in_cone(act(g, x)));
    Mat lhs = act(compose(g, h), x).data;
    Mat rhs = act(g, act(h, x)).data;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11 * rhs.cwiseAbs().maxCoeff());
    GroupElement gi = group_inverse(g);
    Mat back = act(gi, act(g, x)).data;
    CHECK((back - x.data).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("group element validation") {
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  Mat singular = Mat::Zero(2, 2);
  CHECK_THROWS_AS(GroupElement(desc, singular, true), DomainError);
  Mat cplx(2, 2);
  cplx << Cplx(1, 0.5), Cplx(0, 0), Cplx(0, 0), Cplx(1, 0);
  CHECK_THROWS_AS(GroupElement(desc, cplx, true), StructuralError);
}

TEST_CASE("relative invariance of the power function under the triangular group") {
  // Delta_nu(h x h^*) = Delta_nu(h h^*) Delta_nu(x) for lower-triangular h.
  RandomStream rng(13);
  for (const auto& desc : kAlgebras) {
    for (int rep = 0; rep < 20; ++rep) {
      AlgebraElement x = random_cone_point(rng, desc);
      GroupElement h = random_triangular(rng, desc, 0.5);
      Weight nu(desc.rank);
      for (int j = 0; j < desc.rank; ++j) nu[j] = Cplx(1.5 - 0.5 * j, 0.3 * j);
      Cplx lhs = power_function(act(h, x), nu);
      Cplx rhs = power_function(act(h, unit_element(desc)), nu) * power_function(x, nu);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
  }
}

TEST_CASE("Iwasawa character matches the power function at the identity orbit") {
  RandomStream rng(19);
  for (const auto& desc : kAlgebras) {
    GroupElement h = random_triangular(rng, desc, 0.5);
    Weight nu(desc.rank);
    for (int j = 0; j < desc.rank; ++j) nu[j] = Cplx(0.8 + 0.2 * j, -0.1 * j);
    Cplx lhs = iwasawa_character(h, nu);
    Cplx rhs = power_function(act(h, unit_element(desc)), nu);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("Haar samples are orthogonal/unitary with unit determinant modulus") {
  RandomStream rng(23);
  for (const auto& desc : kAlgebras) {
    GroupElement k = haar_sample(rng, desc);
    Mat gram = k.matrix.adjoint() * k.matrix;
    CHECK((gram - Mat(Mat::Identity(desc.rank, desc.rank))).cwiseAbs().maxCoeff() < 1e-12);
    if (desc.model == Model::RealSymmetric)
      CHECK(k.matrix.imag().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Haar second moment: E[k x k^*] = (tr x / r) I") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  RandomStream rng(29);
  AlgebraElement x = diagonal_element(desc, {3.0, 1.0, 0.5});
  Mat acc = Mat::Zero(3, 3);
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    GroupElement k = haar_sample(rng, desc);
    acc += k.matrix * x.data * k.matrix.adjoint();
  }
  acc /= static_cast<double>(n);
  Mat want = (4.5 / 3.0) * Mat(Mat::Identity(3, 3));
  CHECK((acc - want).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("group character is the determinant of the induced cone action") {
  RandomStream rng(31);
  for (const auto& desc : kAlgebras) {
    GroupElement g = random_group_element(rng, desc);
    // Delta(g e g^*) = character
    double want = power_function(act(g, unit_element(desc)),
                                 constant_weight(Cplx(1.0, 0.0), desc.rank))
                      .real();
    CHECK(group_character(g) == Approx(want).epsilon(1e-10));
  }
}
