#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fixtures.hpp"
#include "hent/error.hpp"
#include "hent/oracle.hpp"

using namespace hent;

namespace {

HylleraasWavefunction product_state(double a) {
  const auto mp = assemble(0, a, a, 2.0);
  return normalize(HylleraasWavefunction(mp.terms, Eigen::VectorXd::Ones(1), a, a), mp);
}

}  // namespace

TEST_CASE("product state has unit purity") {
  const auto t = trace_rho_squared_mc(product_state(1.4), {200'000, 7, 16, 0});
  CHECK(t.method == TraceMethod::monte_carlo);
  CHECK(t.samples_or_nodes == 200'000);
  CHECK(std::fabs(t.value - 1.0) <= 4 * t.standard_error);
  CHECK(t.standard_error < 0.02);
}

TEST_CASE("identical seed gives a bit-identical estimate") {
  const auto psi = fixtures::family(3).state(1.8, 0);
  const MonteCarloOptions o{100'000, 42, 8, 0};
  const auto a = trace_rho_squared_mc(psi, o);
  const auto b = trace_rho_squared_mc(psi, o);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
  const char* old = std::getenv("HE_ENTANGLE_THREADS");
  const std::string saved = old ? old : "";
  setenv("HE_ENTANGLE_THREADS", "1", 1);
  const auto c = trace_rho_squared_mc(psi, o);
  if (old) setenv("HE_ENTANGLE_THREADS", saved.c_str(), 1); else unsetenv("HE_ENTANGLE_THREADS");
  CHECK(c.value == a.value);
  const auto d = trace_rho_squared_mc(psi, {100'000, 43, 8, 0});
  CHECK(d.value != a.value);
}

TEST_CASE("standard error falls as samples^-1/2") {
  const auto psi = fixtures::family(3).state(1.8, 0);
  const auto a = trace_rho_squared_mc(psi, {250'000, 9, 64, 0});
  const auto b = trace_rho_squared_mc(psi, {1'000'000, 9, 64, 0});
  const double ratio = a.standard_error / b.standard_error;
  CHECK(ratio > 2.0 / 1.5);
  CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("partial-wave identity equals 1 - S_L") {
  const auto psi = fixtures::ground_state();
  const auto sp = decompose(partial_wave_kernels(psi, RadialGrid::gauss_legendre(160, 40.0), 20),
                            {false, true});
  const auto pw = trace_rho_squared_pw(sp);
  CHECK(pw.method == TraceMethod::partial_wave_quadrature);
  CHECK(pw.samples_or_nodes == 160);
  CHECK(std::fabs(pw.linear_entropy() - entropies(sp).s_linear) <= 1e-10);
}

TEST_CASE("rank-1 kernel with unit occupation") {
  PartialWaveKernels k;
  k.grid = RadialGrid::gauss_legendre(150, 40.0);
  k.l_max = 0;
  const auto n = static_cast<Eigen::Index>(k.grid.nodes.size());
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = k.grid.nodes[static_cast<std::size_t>(i)];
    g[i] = 2.0 * r * std::exp(-r);  // int g^2 dr = 1
  }
  k.f = {g * g.transpose() / (4 * std::numbers::pi)};
  const auto sp = decompose(k, {false, true});
  CHECK(trace_rho_squared_pw(sp).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Monte Carlo agrees with the Schmidt route") {
  const auto psi = fixtures::family(3).state(1.8, 0);
  const auto e = entropies(decompose(partial_wave_kernels(psi, RadialGrid::gauss_legendre(160, 40.0), 30)));
  const auto t = trace_rho_squared_mc(psi, {1'000'000, 20150306, 64, 0});
  CHECK(std::fabs(t.linear_entropy() - e.s_linear) <= 3 * t.standard_error);
}

TEST_CASE("oracle validation") {
  const auto mp = assemble(0, 1, 1, 2.0);
  const HylleraasWavefunction raw(mp.terms, Eigen::VectorXd::Ones(1), 1, 1);
  CHECK_THROWS_AS(trace_rho_squared_mc(raw), ValidationError);
  const auto psi = product_state(1.0);
  CHECK_THROWS_AS(trace_rho_squared_mc(psi, {100, 1, 1, 0}), ValidationError);
  CHECK_THROWS_AS(trace_rho_squared_mc(psi, {100'000, 1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(trace_rho_squared_mc(psi, {100'000, 1, 4, -1.0}), ValidationError);
  const auto sp = decompose(partial_wave_kernels(psi, RadialGrid::gauss_legendre(40, 20.0), 2));
  CHECK_THROWS_AS(trace_rho_squared_pw(sp), ValidationError);
  CHECK(to_string(TraceMethod::monte_carlo) != to_string(TraceMethod::partial_wave_quadrature));
}
