#include "hent/eigensolver.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "hent/error.hpp"

namespace hent {
namespace {

template <class Real>
void check_symmetric(const Matrix<Real>& a, const char* what) {
  double scale = 0.0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      scale = std::max(scale, std::fabs(to_double(a(i, j))));
      if (j < i) worst = std::max(worst, std::fabs(to_double(a(i, j) - a(j, i))));
    }
  }
  if (worst > 1e-12 * scale) {
    throw ValidationError(std::string("solve: ") + what + " is not symmetric");
  }
}

// Columns with their largest-magnitude entry made positive.
template <class Real>
void fix_signs(Matrix<Real>& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index arg = 0;
    Real best(0.0);
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const Real a = abs(v(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (v(arg, j) < Real(0.0)) v.col(j) = -v.col(j);
  }
}

struct Orthogonalizer {
  Matrix<DoubleDouble> transform;
  double condition = 0.0;
  double smallest_retained = 0.0;
};

template <class Real>
Real real_sqrt(const Real& x) {
  using std::sqrt;
  return sqrt(x);
}

// X = D U_k s_k^{-1/2} with D = diag(S_ii^{-1/2}), so X^T S X = 1.
template <class Real>
Matrix<Real> orthogonalizer(const Matrix<Real>& s, double tolerance, double& condition,
                            double& smallest_retained) {
  const Eigen::Index n = s.rows();
  Vector<Real> d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(s(i, i) > Real(0.0))) throw NumericalError("solve: non-positive overlap diagonal");
    d[i] = Real(1.0) / real_sqrt(s(i, i));
  }
  const Matrix<Real> scaled = d.asDiagonal() * s * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(scaled);
  if (es.info() != Eigen::Success) throw NumericalError("solve: overlap diagonalization failed");
  const Vector<Real>& ev = es.eigenvalues();
  const double smax = to_double(ev[n - 1]);
  const double smin = to_double(ev[0]);
  condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  const Real cutoff = Real(tolerance * smax);
  Eigen::Index first = 0;
  while (first < n && !(ev[first] > cutoff)) ++first;
  const Eigen::Index rank = n - first;
  if (rank == 0) throw NumericalError("solve: overlap matrix has retained rank 0");
  smallest_retained = to_double(ev[first]);
  Matrix<Real> x = es.eigenvectors().rightCols(rank);
  for (Eigen::Index j = 0; j < rank; ++j) x.col(j) /= real_sqrt(ev[first + j]);
  return d.asDiagonal() * x;
}

template <class Real>
SpectrumResult solve_impl(const BasicMatrixPair<Real>& mp, SolverOptions options) {
  if (mp.overlap.rows() != mp.overlap.cols() || mp.hamiltonian.rows() != mp.hamiltonian.cols() ||
      mp.overlap.rows() != mp.hamiltonian.rows()) {
    throw ValidationError("solve: matrices must be square and of equal size");
  }
  if (mp.overlap.rows() == 0) throw ValidationError("solve: empty basis");
  check_symmetric(mp.overlap, "overlap");
  check_symmetric(mp.hamiltonian, "hamiltonian");

  SpectrumResult result;
  const Matrix<Real> x = orthogonalizer(mp.overlap, options.rank_tolerance,
                                        result.condition_estimate, result.smallest_retained);
  Matrix<Real> h = x.transpose() * mp.hamiltonian * x;
  h = (0.5 * (h + h.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("solve: reduced eigenproblem failed");
  Matrix<Real> c = x * es.eigenvectors();
  fix_signs(c);
  result.retained_rank = x.cols();
  result.energies = es.eigenvalues().unaryExpr([](const Real& v) { return to_double(v); });
  result.coefficients = c.unaryExpr([](const Real& v) { return to_double(v); });
  return result;
}

template <class Real>
HylleraasWavefunction normalize_impl(const HylleraasWavefunction& psi,
                                     const BasicMatrixPair<Real>& mp) {
  if (static_cast<Eigen::Index>(psi.size()) != mp.overlap.rows() || psi.terms() != mp.terms) {
    throw ValidationError("normalize: wavefunction is not built on this basis");
  }
  const Vector<Real> c = psi.coefficients().template cast<Real>();
  const Real norm2 = c.dot(mp.overlap * c);
  if (!(norm2 > Real(0.0)) || !std::isfinite(to_double(norm2))) {
    throw ValidationError("normalize: zero-norm wavefunction");
  }
  const Real inv = Real(1.0) / real_sqrt(norm2);
  Eigen::VectorXd scaled =
      (c * inv).unaryExpr([](const Real& v) { return to_double(v); });
  return psi.with_coefficients(std::move(scaled), true);
}

}  // namespace

SpectrumResult solve(const MatrixPair& mp, SolverOptions options) {
  return solve_impl(mp, options);
}

SpectrumResult solve(const ExtendedMatrixPair& mp, SolverOptions options) {
  return solve_impl(mp, options);
}

double norm_squared(const Eigen::VectorXd& c, const MatrixPair& mp) {
  return c.dot(mp.overlap * c);
}

DoubleDouble norm_squared(const Eigen::VectorXd& c, const ExtendedMatrixPair& mp) {
  const Vector<DoubleDouble> cc = c.cast<DoubleDouble>();
  return cc.dot(mp.overlap * cc);
}

HylleraasWavefunction normalize(const HylleraasWavefunction& psi, const MatrixPair& mp) {
  return normalize_impl(psi, mp);
}

HylleraasWavefunction normalize(const HylleraasWavefunction& psi, const ExtendedMatrixPair& mp) {
  return normalize_impl(psi, mp);
}

DilationFamily::DilationFamily(const UnitScaleMatrices& unit, double nuclear_charge,
                               AssembleOptions assemble, SolverOptions options)
    : terms_(unit.terms), omega_(unit.omega), nuclear_charge_(nuclear_charge) {
  if (!(nuclear_charge > 0.0)) throw ValidationError("DilationFamily: Z must be positive");
  transform_ = orthogonalizer(unit.overlap, options.rank_tolerance, condition_,
                              smallest_retained_);
  Matrix<DoubleDouble> v = nuclear_charge * unit.nuclear;
  if (assemble.interaction) v += unit.repulsion;
  const auto round = [](const DoubleDouble& x) { return to_double(x); };
  Matrix<DoubleDouble> t = transform_.transpose() * unit.kinetic * transform_;
  Matrix<DoubleDouble> p = transform_.transpose() * v * transform_;
  kinetic_ = (0.5 * (t + t.transpose())).unaryExpr(round);
  potential_ = (0.5 * (p + p.transpose())).unaryExpr(round);
}

Eigen::MatrixXd DilationFamily::reduced_hamiltonian(double alpha) const {
  if (!(alpha > 0.0)) throw ValidationError("DilationFamily: alpha must be positive");
  return alpha * alpha * kinetic_ + alpha * potential_;
}

Eigen::VectorXd DilationFamily::energies(double alpha) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced_hamiltonian(alpha),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed at alpha = " + std::to_string(alpha));
  }
  return es.eigenvalues();
}

Eigen::MatrixXd DilationFamily::back_transform(double alpha, const Eigen::MatrixXd& reduced) const {
  Matrix<DoubleDouble> c = transform_ * reduced.cast<DoubleDouble>();
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    const DoubleDouble scale = pow(DoubleDouble(alpha), terms_[i].degree() + 3);
    c.row(i) *= scale;
  }
  fix_signs(c);
  return c.unaryExpr([](const DoubleDouble& x) { return to_double(x); });
}

SpectrumResult DilationFamily::solve(double alpha) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced_hamiltonian(alpha));
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed at alpha = " + std::to_string(alpha));
  }
  SpectrumResult r;
  r.energies = es.eigenvalues();
  r.coefficients = back_transform(alpha, es.eigenvectors());
  r.retained_rank = transform_.cols();
  r.condition_estimate = condition_;
  r.smallest_retained = smallest_retained_;
  return r;
}

HylleraasWavefunction DilationFamily::state(double alpha, Eigen::Index index) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced_hamiltonian(alpha));
  if (es.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed at alpha = " + std::to_string(alpha));
  }
  if (index < 0 || index >= es.eigenvalues().size()) {
    throw ValidationError("DilationFamily::state: index " + std::to_string(index) +
                          " outside the spectrum");
  }
  const Eigen::MatrixXd c = back_transform(alpha, es.eigenvectors().col(index));
  return {terms_, c.col(0), alpha, alpha, nuclear_charge_, true};
}

}  // namespace hent
