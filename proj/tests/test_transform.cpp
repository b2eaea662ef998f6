#include <catch2/catch_amalgamated.hpp>

#include "cone/cone.hpp"

using namespace cone;
using Catch::Approx;

namespace {

RadialFunction log_gauss(int l) {
  return RadialFunction{l,
                        [](const std::vector<double>& t) {
                          double s = 0.0;
                          for (double v : t) s += std::log(v) * std::log(v);
                          return Cplx(std::exp(-s), 0.0);
                        },
                        true};
}

RadialFunction exp_trace(int l) {
  return RadialFunction{l,
                        [](const std::vector<double>& t) {
                          double s = 0.0;
                          for (double v : t) s += v;
                          return Cplx(std::exp(-s), 0.0);
                        },
                        true};
}

}  // namespace

TEST_CASE("rank-1 transform of exp(-t) is the Gamma function") {
  // f_hat(nu) = int e^{-t} t^{-nu} dt/t = Gamma(-nu)
  FtEvaluator ft(exp_trace(1), 1);
  CHECK(std::abs(ft({Cplx(-2.5, 0.0)}) - Cplx(1.3293403881791370, 0.0)) < 1e-9);
  Cplx got = ft({Cplx(-1.5, -2.0)});
  Cplx want = gamma_fn(Cplx(1.5, 2.0));
  CHECK(std::abs(got - want) < 1e-9 * std::abs(want));
}

TEST_CASE("rank-2 angular factor: closed forms and symmetry") {
  // d = 1, z = 2: the circle average of (cosh + sinh cos)^2
  for (double delta : {0.7, 3.0, 9.0}) {
    double c = std::cosh(0.5 * delta), s = std::sinh(0.5 * delta);
    CHECK(detail::rank2_angular(Cplx(2.0, 0.0), delta, 1).real() ==
          Approx(c * c + 0.5 * s * s).epsilon(1e-9));
  }
  // Legendre-type symmetry z -> -1-z (d = 1) and z -> -2-z (d = 2)
  Cplx z(0.8, 4.0);
  CHECK(std::abs(detail::rank2_angular(z, 2.5, 1) - detail::rank2_angular(-1.0 - z, 2.5, 1)) <
        1e-9);
  CHECK(std::abs(detail::rank2_angular(z, 2.5, 2) - detail::rank2_angular(-2.0 - z, 2.5, 2)) <
        1e-14);
  // Agreement with the direct angular quadrature at sigma = 0
  for (int d : {1, 2}) {
    double delta = 3.0;
    double a = std::exp(0.5 * delta), b = std::exp(-0.5 * delta);
    Cplx zz(1.2, 5.0);
    Cplx via_quad = spherical_quadrature_rank2(a, b, {zz, Cplx(0.0, 0.0)}, d);
    CHECK(std::abs(detail::rank2_angular(zz, delta, d) - via_quad) <
          1e-8 * std::abs(via_quad));
  }
}

TEST_CASE("rank-2 transform of exp(-tr) matches the Gindikin Laplace formula") {
  // f_hat(nu) = kappa * Gamma_{O^(2)}(mu) with mu = -nu + rho^(2); the angular
  // constant kappa must not depend on nu.
  for (int d : {1, 2}) {
    FtEvaluator ft(exp_trace(2), d);
    auto mu_of = [d](const Weight& nu) {
      return Weight{-nu[0] - 0.25 * d, -nu[1] + 0.25 * d};
    };
    std::vector<Weight> nus = {{Cplx(-3.0, 0.0), Cplx(-1.2, 0.0)},
                               {Cplx(-2.6, 0.4), Cplx(-1.5, -0.2)},
                               {Cplx(-3.5, -0.8), Cplx(-1.8, 0.3)}};
    Cplx k0(0.0, 0.0);
    for (const Weight& nu : nus) {
      Cplx kappa = ft(nu) / gindikin_gamma(mu_of(nu), 2, d);
      if (k0 == Cplx(0.0, 0.0)) k0 = kappa;
      CHECK(std::abs(kappa - k0) < 1e-5 * std::abs(k0));
    }
  }
}

TEST_CASE("calibrated inversion constants match the analytic values") {
  CHECK(calibrate_c0(1, 1) == Approx(1.0 / (2.0 * M_PI)).epsilon(1e-8));
  CHECK(calibrate_c0(1, 2) == Approx(1.0 / (2.0 * M_PI)).epsilon(1e-8));
  CHECK(calibrate_c0(2, 1) == Approx(1.0 / (8.0 * M_PI)).epsilon(2e-3));
  CHECK(calibrate_c0(2, 2) == Approx(1.0 / (8.0 * M_PI * M_PI)).epsilon(2e-3));
}

TEST_CASE("conjugate-mirror fill reproduces the full tilde grid for real input") {
  FtEvaluator ft(log_gauss(1), 1);
  LambdaGrid grid{4.0, 0.5};
  auto full = tilde_on_grid(ft, grid, 2, 1, 1, false);
  auto half = tilde_on_grid(ft, grid, 2, 1, 1, true);
  REQUIRE(full.size() == half.size());
  for (size_t i = 0; i < full.size(); ++i) CHECK(std::abs(full[i] - half[i]) < 1e-12);
}

TEST_CASE("rank-1 inversion round trip is spectrally accurate") {
  RadialFunction f = log_gauss(1);
  FtEvaluator ft(f, 1);
  LambdaGrid grid;  // cut 16, step 0.05
  auto tilde = tilde_on_grid(ft, grid, 2, 1, 1, true);
  double c0 = 1.0 / (2.0 * M_PI);
  for (double t : {1.0, 2.5, 0.4}) {
    Cplx got = invert_at(tilde, grid, {t}, 2, 1, 1, c0);
    double want = std::exp(-std::log(t) * std::log(t));
    CHECK(std::abs(got - Cplx(want, 0.0)) < 1e-7);
  }
}

TEST_CASE("rank-1 Plancherel identity holds to near machine precision") {
  QuadratureSpec qspec;
  qspec.panels = 16;
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  auto rep = plancherel_check(desc, log_gauss(1), 1, qspec, default_transform_spec(1),
                              LambdaGrid{16.0, 0.05}, 1e-8, true);
  INFO("lhs=" << rep.lhs << " rhs=" << rep.rhs << " rel=" << rep.rel_discrepancy
              << " tail=" << rep.lambda_tail);
  CHECK(rep.pass);
  CHECK(rep.lambda_tail < 1e-10);
}

TEST_CASE("rank-2 Plancherel identity on the complex model") {
  QuadratureSpec qspec;
  qspec.panels = 16;
  auto desc = make_descriptor(Model::ComplexHermitian, 3);
  auto rep = plancherel_check(desc, log_gauss(2), 2, qspec, default_transform_spec(2),
                              LambdaGrid{8.0, 0.25}, 2e-2, true);
  INFO("lhs=" << rep.lhs << " rhs=" << rep.rhs << " rel=" << rep.rel_discrepancy
              << " tail=" << rep.lambda_tail);
  CHECK(rep.pass);
}

TEST_CASE("intertwining operator: direct integral equals the closed form") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  const int l = 1, d = 1;
  // nu' = -(i nu + rho'_1) must be decreasing >= 0: rho'_1 = 3/4 at (3,1,1)
  Weight nu = {Cplx(0.0, 3.0)};  // nu' = 3 - 3/4
  RandomStream rng(77);
  GroupElement g = random_group_element(rng, desc, 0.25);
  QuadratureSpec spec;
  spec.n_k = 8000;
  RadialFunction f = exp_trace(1);
  IntegralResult direct = intertwine_direct(desc, radial_fn(f), g, nu, l, spec);
  FtEvaluator ft(f, d, default_transform_spec(1));
  Cplx closed = intertwine_closed_form(desc, ft, g, nu, l);
  Cplx ratio = direct.value / closed;
  INFO("direct=" << direct.value << " closed=" << closed << " ratio=" << ratio);
  CHECK(std::abs(ratio - Cplx(1.0, 0.0)) <
        std::max(4.0 * direct.stderr_ / std::abs(direct.value), 0.01));
}

TEST_CASE("intertwining integral rejects divergent parameters") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  RandomStream rng(78);
  GroupElement g = random_group_element(rng, desc, 0.25);
  QuadratureSpec spec;
  RadialFunction f = exp_trace(1);
  // nu' = -(i nu + rho'_1) has negative real part for nu = -i
  CHECK_THROWS_AS(intertwine_direct(desc, radial_fn(f), g, {Cplx(0.0, -1.0)}, 1, spec),
                  DomainError);
}
