#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hent/eigensolver.hpp"
#include "hent/error.hpp"

using namespace hent;

namespace {

MatrixPair pair2(Eigen::Matrix2d h, Eigen::Matrix2d s = Eigen::Matrix2d::Identity()) {
  MatrixPair mp;
  mp.overlap = s;
  mp.hamiltonian = h;
  mp.terms = {{0, 0, 0}, {0, 0, 1}};
  return mp;
}

}  // namespace

TEST_CASE("diagonal pair") {
  Eigen::Matrix2d h;
  h << -1, 0, 0, 3;
  const auto r = solve(pair2(h));
  CHECK(r.energies[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(r.energies[1] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r.coefficients.cwiseAbs().isApprox(Eigen::Matrix2d::Identity(), 1e-14));
  CHECK(r.retained_rank == 2);
}

TEST_CASE("textbook symmetric pair") {
  Eigen::Matrix2d h;
  h << 2, 1, 1, 2;
  const auto r = solve(pair2(h));
  CHECK(r.energies[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.energies[1] == doctest::Approx(3.0).epsilon(1e-15));
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2d v0 = r.coefficients.col(0) * (r.coefficients(0, 0) > 0 ? 1.0 : -1.0);
  const Eigen::Vector2d v1 = r.coefficients.col(1) * (r.coefficients(0, 1) > 0 ? 1.0 : -1.0);
  CHECK(v0.isApprox(Eigen::Vector2d(s, -s), 1e-14));
  CHECK(v1.isApprox(Eigen::Vector2d(s, s), 1e-14));
}

TEST_CASE("non-symmetric input is rejected") {
  Eigen::Matrix2d h;
  h << 2, 1, 0, 2;
  CHECK_THROWS_AS(solve(pair2(h)), ValidationError);
  MatrixPair empty;
  CHECK_THROWS_AS(solve(empty), ValidationError);
}

TEST_CASE("nearly dependent overlap loses rank") {
  Eigen::Matrix2d s;
  s << 1, 1 - 1e-15, 1 - 1e-15, 1;
  Eigen::Matrix2d h;
  h << 1, 0.5, 0.5, 1;
  const auto r = solve(pair2(h, s));
  CHECK(r.retained_rank == 1);
  CHECK(r.energies.size() == 1);
}

TEST_CASE("residuals and S-orthonormality on a helium basis") {
  for (bool extended : {false, true}) {
    const auto ext = assemble_extended(5, 1.8, 1.8, 2.0);
    const auto mp = to_double(ext);
    const auto r = extended ? solve(ext, {1e-24}) : solve(mp);
    const Eigen::MatrixXd& c = r.coefficients;
    const Eigen::MatrixXd gram = c.transpose() * mp.overlap * c;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
          1e-8);
    for (Eigen::Index i = 0; i < r.energies.size(); ++i) {
      const Eigen::VectorXd hc = mp.hamiltonian * c.col(i);
      const Eigen::VectorXd res = hc - r.energies[i] * (mp.overlap * c.col(i));
      CAPTURE(i);
      CHECK(res.norm() / hc.norm() <= 1e-8);
    }
  }
}

TEST_CASE("eigenvalues do not depend on basis order") {
  const auto mp = assemble(4, 1.5, 1.5, 2.0);
  const Eigen::Index n = mp.overlap.rows();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(11);
  std::shuffle(order.begin(), order.end(), rng);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(n);
  for (Eigen::Index i = 0; i < n; ++i) p.indices()[i] = order[static_cast<std::size_t>(i)];
  MatrixPair q = mp;
  q.overlap = p * mp.overlap * p.transpose();
  q.hamiltonian = p * mp.hamiltonian * p.transpose();
  const auto a = solve(mp).energies;
  const auto b = solve(q).energies;
  REQUIRE(a.size() == b.size());
  // double: S has condition ~1e7 here, so only relative agreement at the top
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    CHECK(std::fabs(a[i] - b[i]) <= 1e-9 * std::max(1.0, std::fabs(a[i])));
  }
  const auto ext = assemble_extended(4, 1.5, 1.5, 2.0);
  ExtendedMatrixPair qe = ext;
  qe.overlap = p * ext.overlap * p.transpose();
  qe.hamiltonian = p * ext.hamiltonian * p.transpose();
  const auto c = solve(ext, {1e-24}).energies;
  const auto d = solve(qe, {1e-24}).energies;
  CHECK((c - d).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("normalize") {
  const auto mp = assemble(2, 1.3, 1.3, 2.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::VectorXd c(mp.overlap.rows());
  for (auto& x : c) x = u(rng);
  const HylleraasWavefunction psi(mp.terms, c, 1.3, 1.3);
  const auto n1 = normalize(psi, mp);
  CHECK(n1.normalized());
  CHECK(n1.coefficients().dot(mp.overlap * n1.coefficients()) == doctest::Approx(1.0).epsilon(1e-14));
  const auto n2 = normalize(n1, mp);
  CHECK((n2.coefficients() - n1.coefficients()).cwiseAbs().maxCoeff() <= 1e-12);
  const auto n7 = normalize(psi.with_coefficients(7.0 * c, false), mp);
  CHECK((n7.coefficients() - n1.coefficients()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(normalize(psi.with_coefficients(Eigen::VectorXd::Zero(c.size()), false), mp),
                  ValidationError);
}

TEST_CASE("helium ground state") {
  const double exact = -2.9037243770;
  const double e3 = solve(assemble(3, 1.8, 1.8, 2.0)).energies[0];
  CHECK(e3 <= -2.9027);
  CHECK(e3 >= exact - 1e-9);
  const double e6 = solve(assemble_extended(6, 1.8, 1.8, 2.0), {1e-24}).energies[0];
  CHECK(e6 >= -2.90373);
  CHECK(e6 <= -2.90340);
  CHECK(e6 >= exact - 1e-9);
}

TEST_CASE("non-interacting ground state is -Z^2") {
  for (int w : {0, 3, 6}) {
    const double e =
        solve(assemble_extended(w, 2.0, 2.0, 2.0, {false}), {1e-24}).energies[0];
    CHECK(e == doctest::Approx(-4.0).epsilon(1e-12));
  }
}

TEST_CASE("dilation family agrees with a direct solve") {
  const DilationFamily fam(assemble_unit_scale(6), 2.0, {}, {1e-24});
  for (double a : {0.6, 1.1, 1.8}) {
    const auto direct = solve(assemble_extended(6, a, a, 2.0), {1e-24});
    const auto e = fam.energies(a);
    for (Eigen::Index n = 0; n < 6; ++n) {
      CHECK(e[n] == doctest::Approx(direct.energies[n]).epsilon(1e-11));
    }
    const auto psi = fam.state(a, 0);
    CHECK(psi.normalized());
    const auto mp = assemble(6, a, a, 2.0);
    const Eigen::VectorXd& c = psi.coefficients();
    CHECK(c.dot(mp.overlap * c) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c.dot(mp.hamiltonian * c) == doctest::Approx(e[0]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(fam.energies(0.0), ValidationError);
  CHECK_THROWS_AS(fam.state(1.0, 100000), ValidationError);
}
