// cone-harmonics: command-line front end for the harmonic-analysis library.
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cone/cone.hpp"

using nlohmann::json;
using namespace cone;

namespace {

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

// Complex scalar grammar: "1.5", "2i", "1.5+0.3i", "1.5-0.3i", "-2.0+1i".
Cplx parse_complex(const std::string& s) {
  std::string str = s;
  str.erase(std::remove_if(str.begin(), str.end(), ::isspace), str.end());
  if (str.empty()) throw CLI::ValidationError("empty complex literal");
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = str.size(); i-- > 1;) {
    char c = str[i];
    if ((c == '+' || c == '-') && str[i - 1] != 'e' && str[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto to_d = [](const std::string& p) {
    size_t pos = 0;
    double v = std::stod(p, &pos);
    if (pos != p.size()) throw CLI::ValidationError("bad numeric literal: " + p);
    return v;
  };
  if (!str.empty() && str.back() == 'i') {
    std::string body = str.substr(0, str.size() - 1);
    if (split == std::string::npos)
      return Cplx(0.0, body.empty() || body == "+" ? 1.0 : body == "-" ? -1.0 : to_d(body));
    std::string re = str.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+" || im.empty()) im = "1";
    if (im == "-") im = "-1";
    return Cplx(to_d(re), to_d(im));
  }
  return Cplx(to_d(str), 0.0);
}

Weight parse_weight(const std::string& s) {
  Weight w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) w.push_back(parse_complex(item));
  if (w.empty()) throw CLI::ValidationError("empty weight list");
  return w;
}

WeightR parse_real_list(const std::string& s) {
  WeightR w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) w.push_back(std::stod(item));
  if (w.empty()) throw CLI::ValidationError("empty list");
  return w;
}

// Matrix grammar: "diag:2,1,0.5" or "full:2,1;1,2" (rows split by ';',
// entries are complex scalars).
AlgebraElement parse_matrix(const std::string& s, const AlgebraDescriptor& desc) {
  if (s.rfind("diag:", 0) == 0) {
    WeightR t = parse_real_list(s.substr(5));
    if (static_cast<int>(t.size()) != desc.rank)
      throw CLI::ValidationError("diag: expects exactly rank entries");
    return diagonal_element(desc, std::vector<double>(t.begin(), t.end()));
  }
  if (s.rfind("full:", 0) == 0) {
    std::vector<std::vector<Cplx>> rows;
    std::stringstream ss(s.substr(5));
    std::string row;
    while (std::getline(ss, row, ';')) {
      std::vector<Cplx> r;
      std::stringstream rs(row);
      std::string item;
      while (std::getline(rs, item, ','))
        if (!item.empty()) r.push_back(parse_complex(item));
      rows.push_back(std::move(r));
    }
    if (static_cast<int>(rows.size()) != desc.rank)
      throw CLI::ValidationError("full: expects rank rows");
    Mat m(desc.rank, desc.rank);
    for (int i = 0; i < desc.rank; ++i) {
      if (static_cast<int>(rows[i].size()) != desc.rank)
        throw CLI::ValidationError("full: expects rank entries per row");
      for (int j = 0; j < desc.rank; ++j) m(i, j) = rows[i][j];
    }
    return AlgebraElement(desc, m, true);  // validates Hermitian symmetry
  }
  throw CLI::ValidationError("matrix must start with diag: or full:");
}

AlgebraDescriptor descriptor_of(int rank, int degree) {
  if (degree != 1 && degree != 2) throw CLI::ValidationError("--degree must be 1 or 2");
  return make_descriptor(degree == 1 ? Model::RealSymmetric : Model::ComplexHermitian, rank);
}

RadialFunction named_function(const std::string& name, int l) {
  if (name == "gauss")
    return RadialFunction{l,
                          [](const std::vector<double>& t) {
                            double s = 0.0;
                            for (double v : t) s += std::log(v) * std::log(v);
                            return Cplx(std::exp(-s), 0.0);
                          },
                          true};
  if (name == "exp")
    return RadialFunction{l,
                          [](const std::vector<double>& t) {
                            double s = 0.0;
                            for (double v : t) s += v;
                            return Cplx(std::exp(-s), 0.0);
                          },
                          true};
  if (name == "sech2")
    return RadialFunction{l,
                          [](const std::vector<double>& t) {
                            double p = 1.0;
                            for (double v : t) {
                              double c = std::cosh(std::log(v));
                              p /= c * c;
                            }
                            return Cplx(p, 0.0);
                          },
                          true};
  throw CLI::ValidationError("unknown --function (use gauss, exp, or sech2)");
}

// ---------------------------------------------------------------------------
// output
// ---------------------------------------------------------------------------

struct Output {
  std::string format = "json";
  std::string path;

  void emit(const json& record) const {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw CLI::ValidationError("cannot open --out file: " + path);
      os = &file;
    }
    if (format == "json") {
      *os << record.dump(2) << "\n";
    } else {  // csv
      *os << std::setprecision(17);
      *os << "quantity,value_re,value_im,error_estimate,provenance\n";
      double re = 0.0, im = 0.0;
      if (record["value"].is_array()) {
        re = record["value"][0];
        im = record["value"][1];
      } else {
        re = record["value"];
      }
      *os << record["quantity"].get<std::string>() << "," << re << "," << im << ","
          << record["error_estimate"].get<double>() << ","
          << record["provenance"].get<std::string>() << "\n";
    }
  }
};

json complex_json(Cplx v) { return json::array({v.real(), v.imag()}); }

json weight_json(const Weight& w) {
  json a = json::array();
  for (const Cplx& c : w) a.push_back(complex_json(c));
  return a;
}

json record(const std::string& quantity, const json& params, const json& value,
            double error_estimate, const std::string& provenance) {
  return json{{"schema", 1},
              {"quantity", quantity},
              {"params", params},
              {"value", value},
              {"error_estimate", error_estimate},
              {"provenance", provenance}};
}

uint64_t env_seed() {
  const char* s = std::getenv("CONE_HARMONICS_SEED");
  if (!s) return 2024;
  return static_cast<uint64_t>(std::strtoull(s, nullptr, 10));
}

// ---------------------------------------------------------------------------
// verify battery (small, CLI-sized versions of the acceptance checks)
// ---------------------------------------------------------------------------

int verify_restriction(uint64_t seed) {
  bool ok = true;
  struct Config {
    int r, d, l;
  };
  for (Config c : {Config{3, 1, 1}, Config{3, 1, 2}, Config{2, 2, 1}}) {
    Weight nu = c.l == 1 ? Weight{Cplx(1.1, 0.3)} : Weight{Cplx(1.2, 0), Cplx(0.5, 0)};
    std::vector<double> eigs = c.l == 1 ? std::vector<double>{1.7}
                                        : std::vector<double>{1.8, 0.6};
    auto rep = verify_restriction_identity(c.r, c.d, c.l, nu, eigs, 80000, seed, 0.02);
    std::printf("restriction (r=%d,d=%d,l=%d): rel=%.2e %s\n", c.r, c.d, c.l,
                rep.rel_discrepancy, rep.pass ? "PASS" : "FAIL");
    ok = ok && rep.pass;
  }
  return ok ? 0 : 1;
}

int verify_invariance(uint64_t seed) {
  auto desc = make_descriptor(Model::RealSymmetric, 3);
  RandomStream rng(seed);
  GroupElement g = random_group_element(rng, desc, 0.3);
  BoundaryFn f = [](const Mat& y, const std::vector<double>&) {
    double tr = y.trace().real();
    return Cplx(std::exp(-tr) * (1.0 + 0.3 * y(0, 0).real() / (1.0 + tr)), 0.0);
  };
  QuadratureSpec spec;
  spec.n_k = 4000;
  spec.seed = seed;
  auto rep = relative_invariance_check(g, f, 1, spec, 0.01);
  std::printf("measure invariance (r=3,d=1,l=1): rel=%.2e %s\n", rep.ratio_error,
              rep.pass ? "PASS" : "FAIL");
  return rep.pass ? 0 : 1;
}

int verify_inversion() {
  RadialFunction f = named_function("gauss", 1);
  FtEvaluator ft(f, 1);
  LambdaGrid grid;
  auto tilde = tilde_on_grid(ft, grid, 2, 1, 1, true);
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    double want = std::exp(-std::log(t) * std::log(t));
    Cplx got = invert_at(tilde, grid, {t}, 2, 1, 1, 1.0 / (2.0 * M_PI));
    worst = std::max(worst, std::abs(got - Cplx(want, 0.0)) / want);
  }
  bool ok = worst < 1e-3;
  std::printf("inversion round trip (l=1): worst rel=%.2e %s\n", worst, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int verify_plancherel() {
  QuadratureSpec qspec;
  qspec.panels = 16;
  auto desc = make_descriptor(Model::RealSymmetric, 2);
  auto rep = plancherel_check(desc, named_function("gauss", 1), 1, qspec,
                              default_transform_spec(1), LambdaGrid{16.0, 0.05}, 1e-6, true);
  std::printf("Plancherel (r=2,d=1,l=1): rel=%.2e %s\n", rep.rel_discrepancy,
              rep.pass ? "PASS" : "FAIL");
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on symmetric cones: spherical functions, Gamma factors,\n"
               "boundary-orbit measures, and the spherical Fourier transform."};
  app.require_subcommand(1);

  Output out;
  int threads = 1;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out.path, "Write the result to a file instead of stdout");
  app.add_option("--threads", threads, "Worker threads for Monte Carlo sums")
      ->check(CLI::PositiveNumber);

  // ---- spherical ----
  auto* sph = app.add_subcommand("spherical", "Spherical function Phi_nu(x)");
  int s_rank = 2, s_degree = 1;
  std::string s_nu, s_x;
  size_t s_samples = 200000;
  sph->add_option("--rank", s_rank, "Algebra rank r")->required();
  sph->add_option("--degree", s_degree, "Peirce multiplicity d (1 or 2)")->required();
  sph->add_option("--nu", s_nu, "Weight nu, comma-separated complex entries")->required();
  sph->add_option("--x", s_x, "Cone point: diag:t1,..,tr or full:row;row;..")->required();
  sph->add_option("--samples", s_samples, "Monte Carlo sample count (rank >= 3)");

  // ---- gamma ----
  auto* gam = app.add_subcommand("gamma", "Gindikin Gamma function of a rank-l cone");
  int g_l = 1, g_degree = 1;
  std::string g_nu;
  gam->add_option("--orbit", g_l, "Cone rank l")->required();
  gam->add_option("--degree", g_degree, "Peirce multiplicity d")->required();
  gam->add_option("--nu", g_nu, "Weight nu (length l)")->required();

  // ---- gamma-quotient ----
  auto* gq = app.add_subcommand("gamma-quotient",
                                "Gamma quotient linking ambient and boundary cones");
  int q_rank = 2, q_l = 1, q_degree = 1;
  std::string q_nu;
  gq->add_option("--rank", q_rank, "Ambient rank r")->required();
  gq->add_option("--orbit", q_l, "Boundary orbit rank l")->required();
  gq->add_option("--degree", q_degree, "Peirce multiplicity d")->required();
  gq->add_option("--nu", q_nu, "Weight nu (length l)")->required();

  // ---- cfunction ----
  auto* cf = app.add_subcommand("cfunction", "Harish-Chandra c-function c(lambda)");
  int c_l = 2, c_degree = 1;
  std::string c_lambda;
  bool c_squared = false;
  cf->add_option("--orbit", c_l, "Cone rank l")->required();
  cf->add_option("--degree", c_degree, "Peirce multiplicity d")->required();
  cf->add_option("--lambda", c_lambda, "Real spectral parameter, comma-separated")->required();
  cf->add_flag("--inv-squared", c_squared, "Output |c(lambda)|^-2 instead of c");

  // ---- density ----
  auto* den = app.add_subcommand("density", "Plancherel density at lambda");
  int p_rank = 3, p_l = 2, p_degree = 1;
  std::string p_lambda;
  den->add_option("--rank", p_rank, "Ambient rank r")->required();
  den->add_option("--orbit", p_l, "Boundary orbit rank l")->required();
  den->add_option("--degree", p_degree, "Peirce multiplicity d")->required();
  den->add_option("--lambda", p_lambda, "Real spectral parameter")->required();

  // ---- ft ----
  auto* ftc = app.add_subcommand("ft", "Spherical Fourier transform of a test function");
  std::string f_function = "gauss", f_nu;
  int f_l = 1, f_degree = 1;
  ftc->add_option("--function", f_function, "Test function: gauss, exp, or sech2");
  ftc->add_option("--orbit", f_l, "Cone rank l (1 or 2)")->required();
  ftc->add_option("--degree", f_degree, "Peirce multiplicity d")->required();
  ftc->add_option("--nu", f_nu, "Transform argument nu (length l)")->required();

  // ---- invert ----
  auto* inv = app.add_subcommand("invert", "Round-trip inversion at a cone point");
  std::string i_function = "gauss", i_x;
  int i_rank = 2, i_degree = 1, i_l = 1;
  double i_cut = 0.0, i_step = 0.0;
  inv->add_option("--function", i_function, "Test function: gauss, exp, or sech2");
  inv->add_option("--rank", i_rank, "Ambient rank r")->required();
  inv->add_option("--degree", i_degree, "Peirce multiplicity d")->required();
  inv->add_option("--orbit", i_l, "Boundary orbit rank l")->required();
  inv->add_option("--x", i_x, "Evaluation point: diag:t1,..,tl (descending)")->required();
  inv->add_option("--cut", i_cut, "Lambda grid half-width");
  inv->add_option("--step", i_step, "Lambda grid step");

  // ---- plancherel ----
  auto* pl = app.add_subcommand("plancherel", "Plancherel identity check");
  std::string l_function = "gauss";
  int l_rank = 2, l_degree = 1, l_l = 1;
  double l_cut = 0.0, l_step = 0.0, l_rtol = 0.05;
  pl->add_option("--function", l_function, "Test function: gauss, exp, or sech2");
  pl->add_option("--rank", l_rank, "Ambient rank r")->required();
  pl->add_option("--degree", l_degree, "Peirce multiplicity d")->required();
  pl->add_option("--orbit", l_l, "Boundary orbit rank l")->required();
  pl->add_option("--cut", l_cut, "Lambda grid half-width");
  pl->add_option("--step", l_step, "Lambda grid step");
  pl->add_option("--rtol", l_rtol, "Pass tolerance on the relative discrepancy");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "Run a named verification battery");
  std::string v_what = "all";
  ver->add_option("what", v_what, "restriction | invariance | inversion | plancherel | all")
      ->check(CLI::IsMember({"restriction", "invariance", "inversion", "plancherel", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  const uint64_t seed = env_seed();
  try {
    if (sph->parsed()) {
      auto desc = descriptor_of(s_rank, s_degree);
      Weight nu = parse_weight(s_nu);
      if (static_cast<int>(nu.size()) != s_rank)
        throw CLI::ValidationError("--nu must have rank entries");
      AlgebraElement x = parse_matrix(s_x, desc);
      json params = {{"rank", s_rank}, {"degree", s_degree}, {"nu", weight_json(nu)},
                     {"x", s_x}};
      Cplx value;
      double err = 0.0;
      std::string prov;
      if (s_rank == 1) {
        value = power_function(x, nu);
        prov = "exact";
      } else if (s_rank == 2) {
        SpectralData sd = spectral_decomposition(x);
        value = spherical_quadrature_rank2(sd.eigenvalues[0], sd.eigenvalues[1], nu,
                                           s_degree);
        prov = "quadrature";
      } else {
        McResult mc = spherical_mc(x, nu, s_samples, seed, threads);
        value = mc.value;
        err = mc.stderr_;
        prov = "monte-carlo";
      }
      out.emit(record("spherical", params, complex_json(value), err, prov));
    } else if (gam->parsed()) {
      Weight nu = parse_weight(g_nu);
      Cplx v = gindikin_gamma(nu, g_l, g_degree);
      json params = {{"orbit", g_l}, {"degree", g_degree}, {"nu", weight_json(nu)}};
      out.emit(record("gindikin-gamma", params, complex_json(v), 0.0, "exact"));
    } else if (gq->parsed()) {
      Weight nu = parse_weight(q_nu);
      Cplx v = gamma_quotient(nu, q_rank, q_l, q_degree);
      json params = {{"rank", q_rank}, {"orbit", q_l}, {"degree", q_degree},
                     {"nu", weight_json(nu)}};
      out.emit(record("gamma-quotient", params, complex_json(v), 0.0, "exact"));
    } else if (cf->parsed()) {
      WeightR lam = parse_real_list(c_lambda);
      json params = {{"orbit", c_l}, {"degree", c_degree}, {"lambda", lam}};
      if (c_squared) {
        double v = inv_c_squared(lam, c_l, c_degree);
        out.emit(record("inv-c-squared", params, v, 0.0, "exact"));
      } else {
        Cplx v = harish_chandra_c(to_weight(lam), c_l, c_degree);
        out.emit(record("harish-chandra-c", params, complex_json(v), 0.0, "exact"));
      }
    } else if (den->parsed()) {
      WeightR lam = parse_real_list(p_lambda);
      double c0 = calibrate_c0(p_l, p_degree);
      double v = plancherel_density(lam, p_rank, p_l, p_degree, c0);
      json params = {{"rank", p_rank}, {"orbit", p_l}, {"degree", p_degree},
                     {"lambda", lam}, {"c0", c0}};
      out.emit(record("plancherel-density", params, v, 0.0, "calibrated"));
    } else if (ftc->parsed()) {
      Weight nu = parse_weight(f_nu);
      if (static_cast<int>(nu.size()) != f_l)
        throw CLI::ValidationError("--nu must have l entries");
      RadialFunction f = named_function(f_function, f_l);
      Cplx v = spherical_ft(f, nu, f_degree);
      json params = {{"function", f_function}, {"orbit", f_l}, {"degree", f_degree},
                     {"nu", weight_json(nu)}};
      out.emit(record("spherical-ft", params, complex_json(v), 0.0, "quadrature"));
    } else if (inv->parsed()) {
      if (i_x.rfind("diag:", 0) != 0)
        throw CLI::ValidationError("invert expects --x diag:...");
      WeightR t = parse_real_list(i_x.substr(5));
      if (static_cast<int>(t.size()) != i_l)
        throw CLI::ValidationError("--x must have l eigenvalues");
      RadialFunction f = named_function(i_function, i_l);
      LambdaGrid grid{i_l == 1 ? 16.0 : 9.0, i_l == 1 ? 0.05 : 0.25};
      if (i_cut > 0.0) grid.cut = i_cut;
      if (i_step > 0.0) grid.step = i_step;
      FtEvaluator ft(f, i_degree, default_transform_spec(i_l));
      auto tilde = tilde_on_grid(ft, grid, i_rank, i_degree, i_l, true);
      double c0 = calibrate_c0(i_l, i_degree);
      std::vector<double> eigs(t.begin(), t.end());
      Cplx got = invert_at(tilde, grid, eigs, i_rank, i_degree, i_l, c0);
      Cplx truth = f.eval(eigs);
      double rel = std::abs(got - truth) / std::max(1e-300, std::abs(truth));
      json params = {{"function", i_function}, {"rank", i_rank}, {"degree", i_degree},
                     {"orbit", i_l}, {"x", i_x}, {"cut", grid.cut}, {"step", grid.step}};
      json value = {{"reconstructed", complex_json(got)}, {"truth", complex_json(truth)}};
      out.emit(record("inversion-round-trip", params, value, rel, "calibrated"));
    } else if (pl->parsed()) {
      RadialFunction f = named_function(l_function, l_l);
      LambdaGrid grid{l_l == 1 ? 16.0 : 9.0, l_l == 1 ? 0.05 : 0.25};
      if (l_cut > 0.0) grid.cut = l_cut;
      if (l_step > 0.0) grid.step = l_step;
      QuadratureSpec qspec;
      qspec.panels = 16;
      qspec.seed = seed;
      auto desc = descriptor_of(l_rank, l_degree);
      auto rep = plancherel_check(desc, f, l_l, qspec, default_transform_spec(l_l), grid,
                                  l_rtol, true);
      json params = {{"function", l_function}, {"rank", l_rank}, {"degree", l_degree},
                     {"orbit", l_l}, {"cut", grid.cut}, {"step", grid.step},
                     {"rtol", l_rtol}};
      json value = {{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"lambda_tail", rep.lambda_tail},
                    {"pass", rep.pass}};
      out.emit(record("plancherel-check", params, value, rep.rel_discrepancy, "calibrated"));
      return rep.pass ? 0 : 1;
    } else if (ver->parsed()) {
      int rc = 0;
      if (v_what == "restriction" || v_what == "all") rc |= verify_restriction(seed);
      if (v_what == "invariance" || v_what == "all") rc |= verify_invariance(seed);
      if (v_what == "inversion" || v_what == "all") rc |= verify_inversion();
      if (v_what == "plancherel" || v_what == "all") rc |= verify_plancherel();
      std::printf("verify %s: %s\n", v_what.c_str(), rc == 0 ? "PASS" : "FAIL");
      return rc;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PoleError& e) {
    std::cerr << "pole error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: malformed numeric input (" << e.what() << ")\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: numeric input out of range (" << e.what() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
