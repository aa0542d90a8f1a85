#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fixtures.hpp"
#include "hent/error.hpp"
#include "hent/quadrature.hpp"
#include "hent/schmidt.hpp"

using namespace hent;

namespace {

HylleraasWavefunction two_orbital(double a, double b) {
  const auto mp = assemble(0, a, b, 2.0);
  return normalize(HylleraasWavefunction(mp.terms, Eigen::VectorXd::Ones(1), a, b), mp);
}

SchmidtSpectrum spectrum_of(const HylleraasWavefunction& psi, int nodes = 240, double r_max = 60.0,
                            int l_max = 40, DecomposeOptions o = {}) {
  return decompose(partial_wave_kernels(psi, RadialGrid::gauss_legendre(nodes, r_max), l_max), o);
}

SchmidtSpectrum single_l0(std::initializer_list<double> occ) {
  SchmidtSpectrum s;
  s.l_max = 0;
  Eigen::VectorXd o(static_cast<Eigen::Index>(occ.size()));
  Eigen::Index i = 0;
  for (double x : occ) o[i++] = x;
  s.occupation = {o};
  s.lambda = {o.cwiseSqrt() / (4 * std::numbers::pi)};
  return s;
}

}  // namespace

TEST_CASE("two-orbital state matches its closed form") {
  struct Case {
    double a, b, big, small, s_l, s_vn;
  };
  // tests/oracles/schmidt_two_orbital.py
  const Case cases[] = {
      {1.0, 2.0, 0.992296743710859839711788500289, 0.00770325628914016028821149971103,
       0.0152878322633679657108944269815, 0.0651498267323232504788008418682},
      {1.5, 2.5, -1, -1, 0.00465675147669995691724863556226, 0.0237678806680815973516433756931},
  };
  for (const auto& c : cases) {
    const auto sp = spectrum_of(two_orbital(c.a, c.b));
    if (c.big > 0) {
      CHECK(sp.occupation[0][0] == doctest::Approx(c.big).epsilon(1e-10));
      CHECK(sp.occupation[0][1] == doctest::Approx(c.small).epsilon(1e-8));
    }
    for (int l = 1; l <= sp.l_max; ++l) CHECK(sp.occupation[static_cast<std::size_t>(l)].maxCoeff() < 1e-24);
    const auto e = entropies(sp);
    CHECK(e.s_linear == doctest::Approx(c.s_l).epsilon(1e-9));
    CHECK(e.s_vonneumann == doctest::Approx(c.s_vn).epsilon(1e-9));
  }
}

TEST_CASE("product state has a single orbital") {
  const auto psi = two_orbital(1.3, 1.3);
  const auto k = partial_wave_kernels(psi, RadialGrid::gauss_legendre(120, 40.0), 6);
  for (int l = 1; l <= 6; ++l) CHECK(k.f[static_cast<std::size_t>(l)].cwiseAbs().maxCoeff() < 1e-15);
  const auto e = entropies(decompose(k));
  CHECK(e.s_linear == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(e.s_vonneumann) < 1e-10);
}

TEST_CASE("separable kernel gives one eigenvalue") {
  PartialWaveKernels k;
  k.grid = RadialGrid::gauss_legendre(200, 40.0);
  k.l_max = 0;
  const auto n = static_cast<Eigen::Index>(k.grid.nodes.size());
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = k.grid.nodes[static_cast<std::size_t>(i)];
    g[i] = r * std::exp(-r);
  }
  k.f = {g * g.transpose()};
  const auto sp = decompose(k);
  CHECK(sp.lambda[0][0] == doctest::Approx(0.25).epsilon(1e-12));  // int r^2 e^-2r dr
  CHECK(std::fabs(sp.lambda[0][1]) < 1e-14);
}

TEST_CASE("entropies of simple spectra") {
  const auto one = entropies(single_l0({1.0}));
  CHECK(one.s_linear == 0.0);
  CHECK(one.s_vonneumann == 0.0);
  const auto half = entropies(single_l0({0.5, 0.5}));
  CHECK(half.s_linear == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.s_vonneumann == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(entropies(single_l0({0.5, 0.4})), NumericalError);
  CHECK(occupation_from_lambda(1.0 / (4 * std::numbers::pi), 0) == doctest::Approx(1.0));
  CHECK(occupation_from_lambda(3.0 / (4 * std::numbers::pi), 1) == doctest::Approx(1.0));
}

TEST_CASE("ground state properties") {
  const auto psi = fixtures::ground_state();
  const auto sp = spectrum_of(psi, 240, 60.0, 40, {true, false});
  const auto e = entropies(sp);
  CHECK(std::fabs(e.sum_rule_deficit) < 1e-6);
  CHECK(std::fabs(sp.occupation_sum() - 1.0) < 1e-6);
  CHECK(e.s_linear > 0.0);
  CHECK(e.s_linear < 0.05);
  CHECK(e.vonneumann_per_l[40] < 1e-6);
  CHECK(e.s_vonneumann >= -std::log2(1.0 - e.s_linear));

  SUBCASE("orbitals are orthonormal under the grid weights") {
    const auto& grid = RadialGrid::gauss_legendre(240, 60.0);
    const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(),
                                              static_cast<Eigen::Index>(grid.weights.size()));
    for (int l : {0, 1, 3}) {
      const Eigen::MatrixXd u = (*sp.orbitals)[static_cast<std::size_t>(l)].leftCols(4);
      const Eigen::MatrixXd g = u.transpose() * w.asDiagonal() * u;
      CHECK((g - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("doubling the grid barely moves the entropies") {
    const auto e2 = entropies(spectrum_of(psi, 480));
    CHECK(std::fabs(e2.s_linear - e.s_linear) < 1e-6);
    CHECK(std::fabs(e2.s_vonneumann - e.s_vonneumann) < 1e-4);
  }

  SUBCASE("spectrum csv") {
    std::ostringstream os;
    write_spectrum_csv(os, sp, 1e-10);
    const std::string text = os.str();
    CHECK(text.rfind("l,n,lambda,occupation\n0,0,", 0) == 0);
  }
}

TEST_CASE("non-interacting ground state is unentangled") {
  const auto psi = fixtures::family(6, false).state(2.0, 0);
  const auto e = entropies(spectrum_of(psi));
  CHECK(e.s_linear <= 1e-6);
  CHECK(e.s_vonneumann <= 1e-4);
}

TEST_CASE("a global dilation leaves the spectrum unchanged") {
  const auto psi = fixtures::ground_state();
  const double s = 1.5;
  Eigen::VectorXd c = psi.coefficients();
  for (std::size_t i = 0; i < psi.size(); ++i) {
    c[static_cast<Eigen::Index>(i)] *= std::pow(s, psi.terms()[i].degree() + 3);
  }
  const HylleraasWavefunction scaled(psi.terms(), c, s * psi.alpha(), s * psi.beta(),
                                     psi.nuclear_charge(), true);
  const auto a = spectrum_of(psi, 200, 45.0, 10);
  const auto b = spectrum_of(scaled, 200, 45.0 / s, 10);
  for (int l = 0; l <= 10; ++l) {
    const auto& x = a.occupation[static_cast<std::size_t>(l)];
    const auto& y = b.occupation[static_cast<std::size_t>(l)];
    CHECK((x - y).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("partial waves reconstruct the wavefunction") {
  const auto psi = fixtures::family(6).state(1.2, 1);
  double worst = 0.0, scale = 0.0;
  const double pts[][2] = {{0.5, 1.5}, {1.0, 2.5}, {0.8, 4.0}, {3.0, 6.0}, {0.3, 0.9}};
  std::vector<double> pl(41);
  for (const auto& p : pts) {
    const double r1 = p[0], r2 = p[1];
    const auto f = partial_wave_values(psi, r1, r2, 40);
    for (double x : {-0.9, -0.3, 0.2, 0.7, 1.0}) {
      legendre_values(x, 40, pl.data());
      double sum = 0.0;
      for (int l = 0; l <= 40; ++l) sum += f[static_cast<std::size_t>(l)] * pl[static_cast<std::size_t>(l)];
      sum /= r1 * r2;
      const double r12 = std::sqrt(r1 * r1 + r2 * r2 - 2 * r1 * r2 * x);
      const double v = evaluate(psi, r1, r2, r12);
      worst = std::max(worst, std::fabs(sum - v));
      scale = std::max(scale, std::fabs(v));
    }
  }
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("schmidt validation") {
  const auto mp = assemble(0, 1, 1, 2.0);
  const HylleraasWavefunction raw(mp.terms, Eigen::VectorXd::Ones(1), 1, 1);
  CHECK_THROWS_AS(partial_wave_kernels(raw, RadialGrid::gauss_legendre(20, 10), 2), ValidationError);
  CHECK_THROWS_AS(RadialGrid::gauss_legendre(0, 10), ValidationError);
  CHECK_THROWS_AS(RadialGrid::gauss_legendre(10, -1), ValidationError);
  CHECK_THROWS_AS(partial_wave_values(raw, 0.0, 1.0, 2), ValidationError);
}
