#include <catch2/catch_amalgamated.hpp>

#include "cone/cone.hpp"

using namespace cone;
using Catch::Approx;

namespace {

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

TEST_CASE("radial integral at l = 1 is the Mellin integral") {
  // int e^{-t} t^p dt/t = Gamma(p)
  QuadratureSpec spec;
  spec.panels = 16;
  double got = radial_integral(exp_trace(1), 1, 2.5, spec).value.real();
  CHECK(got == Approx(1.3293403881791370).epsilon(1e-10));
}

TEST_CASE("radial integral at l = 2: frozen closed form and Gindikin ratio") {
  // d = 1, power 3/2: int_{t1>t2} (t1-t2) e^{-t1-t2} dt = 1/2
  QuadratureSpec spec;
  spec.panels = 16;
  double got = radial_integral(exp_trace(2), 1, 1.5, spec).value.real();
  // The two-eigenvalue rule converges algebraically across the ordered-simplex
  // diagonal, so the frozen value is certified at 1e-3, not machine precision.
  CHECK(got == Approx(0.5).epsilon(1e-3));
  // The angular constant kappa = raw / Gamma_O(p) must not depend on p.
  for (int d = 1; d <= 2; ++d) {
    double k0 = 0.0;
    for (double p : {0.5 * d + 0.8, 0.5 * d + 1.3, 0.5 * d + 2.1}) {
      double raw = radial_integral(exp_trace(2), d, p, spec).value.real();
      double kappa = raw / gindikin_gamma(constant_weight(p, 2), 2, d).real();
      if (k0 == 0.0) k0 = kappa;
      CHECK(kappa == Approx(k0).epsilon(1e-3));
    }
  }
}

TEST_CASE("boundary integral of a K-invariant function collapses to the radial rule") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  QuadratureSpec spec;
  spec.n_k = 1000;
  for (int l : {1, 2}) {
    RadialFunction f = exp_trace(l);
    IntegralResult b = boundary_integral(desc, l, radial_fn(f), spec);
    IntegralResult r = radial_integral(f, 1, 1.5, spec);
    CHECK(std::abs(b.value - r.value) < 1e-7 * std::abs(r.value));
    CHECK(b.stderr_ < 1e-7 * std::abs(r.value));  // near-zero variance across K
  }
}

TEST_CASE("boundary integral rejects divergent truncations") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  QuadratureSpec spec;
  spec.n_k = 1000;
  BoundaryFn one = [](const Mat&, const std::vector<double>&) { return Cplx(1.0, 0.0); };
  CHECK_THROWS_AS(boundary_integral(desc, 1, one, spec), QuadratureError);
}

TEST_CASE("relative invariance of the orbit measure under a group move") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  RandomStream rng(3001);
  GroupElement g = random_group_element(rng, desc, 0.3);
  BoundaryFn f = [](const Mat& y, const std::vector<double>&) {
    double tr = y.trace().real();
    return Cplx(std::exp(-tr) * (1.0 + 0.3 * y(0, 0).real() / (1.0 + tr)), 0.0);
  };
  QuadratureSpec spec;
  spec.n_k = 4000;
  auto rep = relative_invariance_check(g, f, 1, spec, 0.01);
  INFO("lhs=" << rep.lhs << " rhs=" << rep.rhs << " err=" << rep.ratio_error);
  CHECK(rep.pass);
}

TEST_CASE("Riesz functional of exp(-tr) is identically 1") {
  // R_{nu + ld/2}(e^{-tr}) = 1 for every admissible nu: this exercises the
  // boundary measure, the restriction identity, and the Gamma normalization.
  auto F = [](const Mat& y) { return Cplx(std::exp(-y.trace().real()), 0.0); };
  QuadratureSpec spec;
  spec.n_k = 3000;
  auto desc3 = make_descriptor(Model::RealSymmetric, 3);
  Cplx v1 = riesz_functional(desc3, F, {Cplx(0.7, 0.0)}, 1, spec);
  CHECK(std::abs(v1 - Cplx(1.0, 0.0)) < 2e-2);
  Cplx v2 = riesz_functional(desc3, F, {Cplx(1.0, 0.0), Cplx(0.4, 0.0)}, 2, spec);
  CHECK(std::abs(v2 - Cplx(1.0, 0.0)) < 2e-2);
  auto desc2c = make_descriptor(Model::ComplexHermitian, 3);
  Cplx v3 = riesz_functional(desc2c, F, {Cplx(0.8, 0.0)}, 1, spec);
  CHECK(std::abs(v3 - Cplx(1.0, 0.0)) < 2e-2);
}

TEST_CASE("Riesz functional scaling in the source: exp(-2 tr)") {
  // Homogeneity of mu_l: R_{nu+ld/2}(e^{-2 tr}) = 2^{-|nu| - l rd/2}.
  auto F = [](const Mat& y) { return Cplx(std::exp(-2.0 * y.trace().real()), 0.0); };
  QuadratureSpec spec;
  spec.n_k = 3000;
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  Cplx got = riesz_functional(desc, F, {Cplx(1.0, 0.0), Cplx(0.4, 0.0)}, 2, spec);
  double want = std::pow(2.0, -(1.0 + 0.4) - 2.0 * 1.5);
  CHECK(std::abs(got - Cplx(want, 0.0)) < 1e-2 * want);
}

TEST_CASE("Riesz functional rejects parameters outside the measure regime") {
  auto F = [](const Mat& y) { return Cplx(std::exp(-y.trace().real()), 0.0); };
  QuadratureSpec spec;
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  CHECK_THROWS_AS(riesz_functional(desc, F, {Cplx(-0.5, 0.0)}, 1, spec), DomainError);
  CHECK_THROWS_AS(riesz_functional(desc, F, {Cplx(0.2, 0.0), Cplx(0.8, 0.0)}, 2, spec),
                  DomainError);
}

TEST_CASE("full Monte Carlo fallback at l = 3 obeys measure homogeneity") {
  auto desc = make_descriptor(Model::RealSymmetric, 4);
  QuadratureSpec spec;
  spec.n_k = 1000;
  spec.n_mc = 300000;
  BoundaryFn f1 = [](const Mat&, const std::vector<double>& t) {
    return Cplx(std::exp(-(t[0] + t[1] + t[2])), 0.0);
  };
  BoundaryFn f2 = [](const Mat&, const std::vector<double>& t) {
    return Cplx(std::exp(-2.0 * (t[0] + t[1] + t[2])), 0.0);
  };
  IntegralResult a = boundary_integral(desc, 3, f1, spec);
  IntegralResult b = boundary_integral(desc, 3, f2, spec);
  // x -> x/2 scales the integrand weight by 2^{-l rd/2} = 2^{-6}
  double ratio = (b.value / a.value).real();
  double rel_err = std::hypot(a.stderr_ / std::abs(a.value), b.stderr_ / std::abs(b.value));
  INFO("ratio=" << ratio << " rel_err=" << rel_err);
  CHECK(std::abs(ratio - 1.0 / 64.0) < std::max(4.0 * rel_err / 64.0, 0.05 / 64.0));
}

TEST_CASE("K-invariant projection averages the ambient dependence away") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  BoundaryFn f = [](const Mat& y, const std::vector<double>&) { return y(0, 0); };
  QuadratureSpec spec;
  spec.n_k = 20000;
  RadialFunction proj = k_invariant_project(desc, f, 2, spec);
  // E[(k diag(t,0) k^*)_{00}] = (t1 + t2)/3
  Cplx got = proj.eval({2.0, 1.0});
  CHECK(std::abs(got - Cplx(1.0, 0.0)) < 0.02);
}

TEST_CASE("pi_l action at the identity is the identity operator") {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  BoundaryFn f = [](const Mat& y, const std::vector<double>& t) {
    return Cplx(std::exp(-y.trace().real()) * t[0], 0.0);
  };
  GroupElement id = identity_group_element(desc);
  BoundaryFn g = pi_l_act(id, f, 2);
  Mat y = diagonal_element(desc, {1.5, 0.5, 0.0}).data;
  std::vector<double> t = {1.5, 0.5};
  CHECK(std::abs(g(y, t) - f(y, t)) < 1e-12);
}
