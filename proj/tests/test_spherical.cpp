#include <catch2/catch_amalgamated.hpp>

#include "cone/cone.hpp"

using namespace cone;
using Catch::Approx;

TEST_CASE("rank-1 spherical function is the plain power") {
  McResult v = spherical_eval({2.5}, {Cplx(1.2, 0.7)}, 1);
  Cplx want = std::exp(Cplx(1.2, 0.7) * std::log(2.5));
  CHECK(std::abs(v.value - want) < 1e-14 * std::abs(want));
}

TEST_CASE("spherical function equals 1 at the identity") {
  for (int d : {1, 2}) {
    Cplx v = spherical_quadrature_rank2(1.0, 1.0, {Cplx(1.3, 0.4), Cplx(-0.2, 0.1)}, d);
    CHECK(std::abs(v - Cplx(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("rank-2 quadrature: frozen closed forms") {
  // d = 1, nu = (2, 0): average of (a cos^2 + b sin^2)^2 over the circle
  // = a^2 3/8 + ab/4 + b^2 3/8.
  double a = 3.0, b = 0.5;
  double want1 = 0.375 * a * a + 0.25 * a * b + 0.375 * b * b;
  CHECK(spherical_quadrature_rank2(a, b, {Cplx(2, 0), Cplx(0, 0)}, 1).real() ==
        Approx(want1).epsilon(1e-12));
  // d = 2, nu = (z, 0): int_0^1 (a u + b(1-u))^z du = (a^{z+1}-b^{z+1})/((z+1)(a-b))
  Cplx z(1.7, 0.9);
  Cplx want2 = (std::pow(a, z + 1.0) - std::pow(b, z + 1.0)) / ((z + 1.0) * (a - b));
  CHECK(std::abs(spherical_quadrature_rank2(a, b, {z, Cplx(0, 0)}, 2) - want2) <
        1e-10 * std::abs(want2));
}

TEST_CASE("rank-2 quadrature agrees with the K Monte Carlo definition") {
  for (int d : {1, 2}) {
    auto desc = make_descriptor(d == 1 ? Model::RealSymmetric : Model::ComplexHermitian, 2);
    Weight nu = {Cplx(1.1, 0.6), Cplx(0.4, -0.3)};
    AlgebraElement x = diagonal_element(desc, {2.2, 0.7});
    Cplx quad = spherical_quadrature_rank2(2.2, 0.7, nu, d);
    McResult mc = spherical_mc(x, nu, 200000, 42);
    CHECK(std::abs(mc.value - quad) < std::max(4.0 * mc.stderr_, 1e-3 * std::abs(quad)));
  }
}

TEST_CASE("spherical function is invariant under the shifted Weyl reflection") {
  // nu -> (nu_2 - d/2, nu_1 + d/2) fixes Phi_nu at rank 2.
  for (int d : {1, 2}) {
    Weight nu = {Cplx(1.3, 0.7), Cplx(0.4, -0.2)};
    Weight w = {nu[1] - 0.5 * d, nu[0] + 0.5 * d};
    Cplx base = spherical_quadrature_rank2(2.1, 0.6, nu, d);
    Cplx refl = spherical_quadrature_rank2(2.1, 0.6, w, d);
    CHECK(std::abs(base - refl) < 1e-10 * std::abs(base));
  }
}

TEST_CASE("K-invariance of the Monte Carlo spherical function") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  RandomStream rng(99);
  GroupElement k = haar_sample(rng, desc);
  AlgebraElement x = diagonal_element(desc, {2.0, 1.0, 0.3});
  AlgebraElement kx(desc, Mat(k.matrix * x.data * k.matrix.adjoint()), false);
  Weight nu = {Cplx(1.0, 0.3), Cplx(0.5, 0.0), Cplx(0.0, 0.0)};
  McResult a = spherical_mc(x, nu, 150000, 7);
  McResult b = spherical_mc(kx, nu, 150000, 7);
  CHECK(std::abs(a.value - b.value) < 4.0 * std::hypot(a.stderr_, b.stderr_) + 1e-4);
}

TEST_CASE("restriction identity at a frozen boundary configuration") {
  // Phi_nu(x) = gamma^(l)_nu Phi^(l)_nu(x) for x on the rank-l boundary orbit.
  auto rep = verify_restriction_identity(3, 1, 2, {Cplx(1.2, 0), Cplx(0.5, 0)}, {1.8, 0.6},
                                         120000, 2024, 0.02);
  INFO("lhs=" << rep.lhs << " rhs=" << rep.rhs << " rel=" << rep.rel_discrepancy);
  CHECK(rep.pass);
}

TEST_CASE("restriction identity rejects out-of-domain parameters") {
  CHECK_THROWS_AS(verify_restriction_identity(3, 1, 2, {Cplx(0.5, 0), Cplx(1.2, 0)},
                                              {1.0, 0.5}, 1000, 1),
                  DomainError);
  CHECK_THROWS_AS(verify_restriction_identity(3, 1, 2, {Cplx(1.0, 0), Cplx(0.5, 0)},
                                              {1.0, -0.5}, 1000, 1),
                  DomainError);
}

TEST_CASE("Monte Carlo accumulator reports a calibrated standard error") {
  // For Phi at a fixed point the stderr estimate must shrink like 1/sqrt(n)
  // and cover the quadrature truth.
  Weight nu = {Cplx(0.9, 0.0), Cplx(0.2, 0.0)};
  Cplx truth = spherical_quadrature_rank2(1.9, 0.8, nu, 1);
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  AlgebraElement x = diagonal_element(desc, {1.9, 0.8});
  McResult small = spherical_mc(x, nu, 4000, 3);
  McResult large = spherical_mc(x, nu, 256000, 3);
  CHECK(large.stderr_ < 0.3 * small.stderr_);
  CHECK(std::abs(large.value - truth) < 5.0 * large.stderr_);
}
