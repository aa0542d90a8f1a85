#include "hent/schmidt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "hent/error.hpp"
#include "hent/parallel.hpp"
#include "hent/quadrature.hpp"

namespace hent {

RadialGrid RadialGrid::gauss_legendre(int count, double r_max) {
  if (count < 1) throw ValidationError("RadialGrid: node count must be positive");
  if (!(r_max > 0.0)) throw ValidationError("RadialGrid: r_max must be positive");
  const QuadratureRule rule = hent::gauss_legendre(count, 0.0, r_max);
  return {rule.nodes, rule.weights, r_max, count};
}

namespace {

// Angular projection for one (r1, r2) pair. poly holds A_n(r1, r2) with
// Psi = sum_n A_n r12^n. With u = r12,
//   f_l = (2l+1)/2 int_{|r1-r2|}^{r1+r2} Psi(u) P_l(x(u)) u du,
// x(u) = (r1^2 + r2^2 - u^2) / (2 r1 r2); the integrand has degree
// max_n + 1 + 2l in u.
class AngularProjector {
 public:
  AngularProjector(int max_power, int l_max)
      : l_max_(l_max),
        rule_(gauss_legendre((max_power + 2 * l_max + 2) / 2 + 1)),
        legendre_(static_cast<std::size_t>(l_max) + 1) {}

  void project(const Eigen::VectorXd& poly, double r1, double r2, double* out) {
    std::fill(out, out + l_max_ + 1, 0.0);
    const double lo = std::fabs(r1 - r2);
    const double hi = r1 + r2;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const double inv = 1.0 / (2.0 * r1 * r2);
    for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
      const double u = mid + half * rule_.nodes[q];
      double psi = 0.0;
      for (Eigen::Index n = poly.size() - 1; n >= 0; --n) psi = psi * u + poly[n];
      const double g = rule_.weights[q] * half * psi * u;
      const double x = std::clamp((r1 * r1 + r2 * r2 - u * u) * inv, -1.0, 1.0);
      legendre_values(x, l_max_, legendre_.data());
      for (int l = 0; l <= l_max_; ++l) out[l] += g * legendre_[l];
    }
    for (int l = 0; l <= l_max_; ++l) out[l] *= 0.5 * (2 * l + 1);
  }

 private:
  int l_max_;
  QuadratureRule rule_;
  std::vector<double> legendre_;
};

void require_normalized(const HylleraasWavefunction& psi) {
  if (!psi.normalized()) {
    throw ValidationError("partial-wave kernels need a normalized wavefunction");
  }
}

}  // namespace

std::vector<double> partial_wave_values(const HylleraasWavefunction& psi, double r1, double r2,
                                        int l_max) {
  if (l_max < 0) throw ValidationError("partial_wave_values: l_max must be >= 0");
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw ValidationError("partial_wave_values: radii must be > 0");
  AngularProjector proj(psi.max_degree(), l_max);
  Eigen::VectorXd poly(psi.max_degree() + 1);
  r12_polynomial(psi, r1, r2, poly);
  std::vector<double> out(static_cast<std::size_t>(l_max) + 1);
  proj.project(poly, r1, r2, out.data());
  return out;
}

PartialWaveKernels partial_wave_kernels(const HylleraasWavefunction& psi, const RadialGrid& grid,
                                        int l_max) {
  require_normalized(psi);
  if (l_max < 0) throw ValidationError("partial_wave_kernels: l_max must be >= 0");
  const int n = grid.count;
  PartialWaveKernels k;
  k.grid = grid;
  k.l_max = l_max;
  k.f.assign(static_cast<std::size_t>(l_max) + 1, Eigen::MatrixXd::Zero(n, n));
  // Rows are independent; the lower triangle is filled and mirrored.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    AngularProjector proj(psi.max_degree(), l_max);
    Eigen::VectorXd poly(psi.max_degree() + 1);
    std::vector<double> values(static_cast<std::size_t>(l_max) + 1);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double r1 = grid.nodes[i];
      const double r2 = grid.nodes[j];
      r12_polynomial(psi, r1, r2, poly);
      proj.project(poly, r1, r2, values.data());
      for (int l = 0; l <= l_max; ++l) k.f[l](i, j) = values[l];
    }
  });
  for (auto& f : k.f) f.triangularView<Eigen::StrictlyUpper>() = f.transpose();
  return k;
}

double occupation_from_lambda(double lambda, int l) {
  const double s = 4.0 * std::numbers::pi * lambda / (2.0 * l + 1.0);
  return s * s;
}

double SchmidtSpectrum::occupation_sum() const {
  double sum = 0.0;
  for (int l = 0; l <= l_max; ++l) sum += (2.0 * l + 1.0) * occupation[l].sum();
  return sum;
}

SchmidtSpectrum decompose(const PartialWaveKernels& kernels, DecomposeOptions options) {
  PartialWaveKernels copy = kernels;
  return decompose(std::move(copy), options);
}

SchmidtSpectrum decompose(PartialWaveKernels&& kernels, DecomposeOptions options) {
  const int n = kernels.grid.count;
  const int lcount = kernels.l_max + 1;
  Eigen::VectorXd sqrt_w(n);
  for (int i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(kernels.grid.weights[i]);

  SchmidtSpectrum spec;
  spec.l_max = kernels.l_max;
  spec.lambda.resize(lcount);
  spec.occupation.resize(lcount);
  if (options.keep_orbitals) spec.orbitals.emplace(lcount);

  parallel_for(static_cast<std::size_t>(lcount), [&](std::size_t lu) {
    const int l = static_cast<int>(lu);
    const Eigen::MatrixXd a = sqrt_w.asDiagonal() * kernels.f[l] * sqrt_w.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        a, options.keep_orbitals ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw NumericalError("decompose: diagonalization failed for l = " + std::to_string(l));
    }
    const Eigen::VectorXd& ev = es.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
      return std::fabs(ev[x]) > std::fabs(ev[y]);
    });
    Eigen::VectorXd lam(n);
    Eigen::VectorXd occ(n);
    for (int i = 0; i < n; ++i) {
      lam[i] = ev[order[i]];
      occ[i] = occupation_from_lambda(lam[i], l);
    }
    spec.lambda[l] = std::move(lam);
    spec.occupation[l] = std::move(occ);
    if (options.keep_orbitals) {
      Eigen::MatrixXd u(n, n);
      for (int c = 0; c < n; ++c) {
        u.col(c) = es.eigenvectors().col(order[c]).cwiseQuotient(sqrt_w);
      }
      (*spec.orbitals)[l] = std::move(u);
    }
  });
  if (options.keep_kernels) spec.kernels = std::move(kernels);
  return spec;
}

EntropyResult entropies(const SchmidtSpectrum& spectrum, EntropyOptions options) {
  EntropyResult r;
  r.l_max_used = spectrum.l_max;
  double purity = 0.0;
  double norm = 0.0;
  for (int l = 0; l <= spectrum.l_max; ++l) {
    const double mult = 2.0 * l + 1.0;
    double norm_l = 0.0;
    double vn_l = 0.0;
    for (Eigen::Index i = 0; i < spectrum.occupation[l].size(); ++i) {
      const double occ = spectrum.occupation[l][i];
      norm_l += mult * occ;
      purity += mult * occ * occ;
      if (occ > options.occupation_floor) vn_l -= mult * occ * std::log2(occ);
    }
    r.norm_per_l.push_back(norm_l);
    r.vonneumann_per_l.push_back(vn_l);
    norm += norm_l;
    r.s_vonneumann += vn_l;
  }
  r.s_linear = 1.0 - purity;
  r.sum_rule_deficit = 1.0 - norm;
  for (int l = std::max(0, spectrum.l_max - 1); l <= spectrum.l_max; ++l) {
    r.tail_vonneumann += r.vonneumann_per_l[l];
    r.tail_norm += r.norm_per_l[l];
  }
  if (std::fabs(r.sum_rule_deficit) > options.sum_rule_tolerance) {
    throw NumericalError("entropies: sum rule violated, 1 - sum (2l+1) Lambda = " +
                         std::to_string(r.sum_rule_deficit));
  }
  return r;
}

void write_spectrum_csv(std::ostream& out, const SchmidtSpectrum& spectrum, double floor) {
  auto num = [](double v) {
    char buf[64];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  out << "l,n,lambda,occupation\n";
  for (int l = 0; l <= spectrum.l_max; ++l) {
    for (Eigen::Index i = 0; i < spectrum.lambda[l].size(); ++i) {
      if (spectrum.occupation[l][i] < floor) continue;
      out << l << ',' << i << ',' << num(spectrum.lambda[l][i]) << ','
          << num(spectrum.occupation[l][i]) << '\n';
    }
  }
}

}  // namespace hent
