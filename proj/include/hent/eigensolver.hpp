#pragma once

// Generalized symmetric eigenproblem H c = E S c by canonical
// orthogonalization: S is first scaled to unit diagonal, eigenvectors of S
// with eigenvalue below rank_tolerance * max are dropped, and H is
// diagonalized in the retained orthonormal subspace.

#include <Eigen/Core>

#include "hent/basis.hpp"
#include "hent/integrals.hpp"

namespace hent {

struct SolverOptions {
  /// Relative cutoff on eigenvalues of the unit-diagonal overlap matrix.
  double rank_tolerance = 1e-12;
};

struct SpectrumResult {
  Eigen::VectorXd energies;      ///< ascending
  Eigen::MatrixXd coefficients;  ///< column i belongs to energies[i]; S-orthonormal
  Eigen::Index retained_rank = 0;
  double condition_estimate = 0.0;  ///< max/min eigenvalue of the unit-diagonal S
  double smallest_retained = 0.0;   ///< smallest kept eigenvalue of the unit-diagonal S
};

SpectrumResult solve(const MatrixPair& mp, SolverOptions options = {});
/// Same pipeline carried out in double-double; results rounded at the end.
SpectrumResult solve(const ExtendedMatrixPair& mp, SolverOptions options = {});

/// psi rescaled so that c^T S c = 1.
HylleraasWavefunction normalize(const HylleraasWavefunction& psi, const MatrixPair& mp);
HylleraasWavefunction normalize(const HylleraasWavefunction& psi, const ExtendedMatrixPair& mp);

/// c^T S c.
double norm_squared(const Eigen::VectorXd& c, const MatrixPair& mp);
DoubleDouble norm_squared(const Eigen::VectorXd& c, const ExtendedMatrixPair& mp);

/// The alpha = beta family of eigenproblems for a fixed basis and Z.
///
/// Dilation maps every member onto the alpha = 1 matrices, so
/// E(alpha) are the eigenvalues of alpha^2 T + alpha V in an S-orthonormal
/// basis that is built once (in double-double) and reused for every alpha.
class DilationFamily {
 public:
  DilationFamily(const UnitScaleMatrices& unit, double nuclear_charge,
                 AssembleOptions assemble = {}, SolverOptions options = {});

  /// Ascending eigenvalues at alpha.
  Eigen::VectorXd energies(double alpha) const;
  /// Eigenvalues and coefficient vectors (S(alpha)-orthonormal) at alpha.
  SpectrumResult solve(double alpha) const;

  /// State `index` of the spectrum at alpha as a normalized wavefunction.
  HylleraasWavefunction state(double alpha, Eigen::Index index) const;

  const std::vector<BasisTerm>& terms() const noexcept { return terms_; }
  int omega() const noexcept { return omega_; }
  double nuclear_charge() const noexcept { return nuclear_charge_; }
  Eigen::Index retained_rank() const noexcept { return transform_.cols(); }
  double condition_estimate() const noexcept { return condition_; }
  double smallest_retained() const noexcept { return smallest_retained_; }

 private:
  Eigen::MatrixXd reduced_hamiltonian(double alpha) const;
  Eigen::MatrixXd back_transform(double alpha, const Eigen::MatrixXd& reduced) const;

  std::vector<BasisTerm> terms_;
  int omega_;
  double nuclear_charge_;
  Matrix<DoubleDouble> transform_;  ///< X with X^T S(1) X = 1
  Eigen::MatrixXd kinetic_;         ///< X^T T X
  Eigen::MatrixXd potential_;       ///< X^T V X
  double condition_ = 0.0;
  double smallest_retained_ = 0.0;
};

}  // namespace hent
