#pragma once

// Partial-wave Schmidt decomposition of a normalized 1S two-electron state.
//
// Conventions. With x = cos(theta_12),
//   Psi(r1, r2, r12) = sum_l f_l(r1, r2) / (r1 r2) P_l(x),
//   f_l(r1, r2)      = (2l+1)/2 r1 r2 int_{-1}^{1} Psi P_l(x) dx.
// Each f_l is symmetric and has the Schmidt form
//   f_l(r1, r2) = sum_n lambda_nl u_nl(r1) u_nl(r2),  int u_nl u_n'l dr = delta,
// and the addition theorem turns this into one-particle orbitals
// u_nl(r)/r Y_lm with Schmidt coefficient 4 pi lambda_nl / (2l+1), the same
// for all 2l+1 values of m. The reduced density matrix therefore has
// eigenvalues
//   Lambda_nl = (4 pi lambda_nl / (2l+1))^2,   multiplicity 2l+1,
// and sum_nl (2l+1) Lambda_nl = <Psi|Psi> = 1 is the sum rule that pins this
// normalization.

#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hent/basis.hpp"

namespace hent {

struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double r_max = 0.0;
  int count = 0;

  /// Gauss-Legendre nodes mapped onto [0, r_max].
  static RadialGrid gauss_legendre(int count, double r_max);
};

struct PartialWaveKernels {
  RadialGrid grid;
  int l_max = 0;
  std::vector<Eigen::MatrixXd> f;  ///< f[l](i, j) = f_l(r_i, r_j)
};

/// f_l on every node pair for l = 0..l_max. The angular integral is done in
/// the variable r12 (dx = r12 dr12 / (r1 r2)), where the integrand is a
/// polynomial, with a Gauss-Legendre rule that is exact for it.
PartialWaveKernels partial_wave_kernels(const HylleraasWavefunction& psi, const RadialGrid& grid,
                                        int l_max);

/// f_l(r1, r2) at a single point, same method.
std::vector<double> partial_wave_values(const HylleraasWavefunction& psi, double r1, double r2,
                                        int l_max);

struct SchmidtSpectrum {
  int l_max = 0;
  std::vector<Eigen::VectorXd> lambda;      ///< signed, per l, descending |lambda|
  std::vector<Eigen::VectorXd> occupation;  ///< Lambda_nl, aligned with lambda
  /// u_nl(r_i) per l (columns aligned with lambda), when requested.
  std::optional<std::vector<Eigen::MatrixXd>> orbitals;
  std::optional<PartialWaveKernels> kernels;

  /// sum_nl (2l+1) Lambda_nl
  double occupation_sum() const;
};

struct DecomposeOptions {
  bool keep_orbitals = false;
  bool keep_kernels = false;
};

/// Nystrom discretization of int f_l(r1, r2) u(r2) dr2 = lambda u(r1),
/// symmetrized as W^1/2 F W^1/2.
SchmidtSpectrum decompose(const PartialWaveKernels& kernels, DecomposeOptions options = {});
SchmidtSpectrum decompose(PartialWaveKernels&& kernels, DecomposeOptions options);

/// Lambda_nl = (4 pi lambda / (2l+1))^2
double occupation_from_lambda(double lambda, int l);

struct EntropyOptions {
  double occupation_floor = 1e-16;   ///< Lambda below this adds nothing to S_vN
  double sum_rule_tolerance = 1e-6;
};

struct EntropyResult {
  double s_linear = 0.0;
  double s_vonneumann = 0.0;  ///< bits
  int l_max_used = 0;
  double sum_rule_deficit = 0.0;       ///< 1 - sum (2l+1) Lambda
  std::vector<double> norm_per_l;      ///< sum_n (2l+1) Lambda_nl
  std::vector<double> vonneumann_per_l;
  /// Contribution of the two largest l to S_vN and to the norm.
  double tail_vonneumann = 0.0;
  double tail_norm = 0.0;
};

/// S_vN = -sum (2l+1) Lambda log2 Lambda, S_L = 1 - sum (2l+1) Lambda^2.
/// Throws NumericalError when the sum rule misses by more than the tolerance.
EntropyResult entropies(const SchmidtSpectrum& spectrum, EntropyOptions options = {});

/// CSV with columns l,n,lambda,occupation; rows with occupation below
/// `floor` are skipped.
void write_spectrum_csv(std::ostream& out, const SchmidtSpectrum& spectrum, double floor = 1e-16);

}  // namespace hent
