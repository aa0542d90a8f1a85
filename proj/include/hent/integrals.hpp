#pragma once

// Correlated two-electron integrals over exponential-polynomial functions of
// (r1, r2, r12), and overlap/Hamiltonian matrices over the symmetrized
// Hylleraas basis for an infinitely heavy nucleus of charge Z:
//
//   H = -1/2 lap_1 - 1/2 lap_2 - Z/r1 - Z/r2 + 1/r12
//
// The kinetic energy is taken in the gradient form
//   1/2 <grad_1 f . grad_1 g> + 1/2 <grad_2 f . grad_2 g>
// written in (r1, r2, r12) coordinates, so every matrix is symmetric by
// construction. Everything is computed in double-double and rounded only
// when a double-precision MatrixPair is requested.

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hent/basis.hpp"
#include "hent/double_double.hpp"

namespace hent {

template <class Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Memoized I(a, b, c; A, B) = int r1^a r2^b r12^c exp(-A r1 - B r2) d3r1 d3r2
/// for fixed (A, B) and a, b, c >= -1.
class IntegralTable {
 public:
  IntegralTable(DoubleDouble exponent1, DoubleDouble exponent2);

  DoubleDouble operator()(int a, int b, int c);

 private:
  DoubleDouble radial(int p, int q, int s);
  DoubleDouble ordered(int outer_power, int inner_power, bool swapped);
  void grow(int needed);

  DoubleDouble exp1_;
  DoubleDouble exp2_;
  int dim_ = 0;
  std::vector<DoubleDouble> values_;
  std::vector<char> known_;
  // Inverse powers of exp1, exp2 and exp1 + exp2.
  std::vector<DoubleDouble> inv1_, inv2_, inv12_;
};

/// I(a, b, c; alpha, beta) over all space; a, b >= 0, c >= -1.
double base_integral(int a, int b, int c, double alpha, double beta);

/// Component matrix elements between two symmetrized terms.
struct ElementParts {
  DoubleDouble overlap;
  DoubleDouble kinetic;
  DoubleDouble nuclear;    ///< <-1/r1 - 1/r2>, multiply by Z
  DoubleDouble repulsion;  ///< <1/r12>
};

/// Integral tables for one (alpha, beta) pair: the direct product of two
/// terms carries exponents (2 alpha, 2 beta), the exchanged one (alpha+beta)
/// on both electrons.
class ElementEvaluator {
 public:
  ElementEvaluator(double alpha, double beta);
  ElementParts operator()(const BasisTerm& t1, const BasisTerm& t2);

 private:
  double alpha_;
  double beta_;
  IntegralTable direct_;
  IntegralTable exchange_;
};

double overlap_element(const BasisTerm& t1, const BasisTerm& t2, double alpha, double beta);
double hamiltonian_element(const BasisTerm& t1, const BasisTerm& t2, double alpha, double beta,
                           double nuclear_charge, bool interaction = true);

template <class Real>
struct BasicMatrixPair {
  Matrix<Real> overlap;
  Matrix<Real> hamiltonian;
  std::vector<BasisTerm> terms;
  int basis_omega = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double nuclear_charge = 2.0;
};

using MatrixPair = BasicMatrixPair<double>;
using ExtendedMatrixPair = BasicMatrixPair<DoubleDouble>;

struct AssembleOptions {
  bool interaction = true;  ///< include 1/r12
};

ExtendedMatrixPair assemble_extended(int omega, double alpha, double beta,
                                     double nuclear_charge, AssembleOptions options = {});
MatrixPair assemble(int omega, double alpha, double beta, double nuclear_charge,
                    AssembleOptions options = {});

/// Rounded copy.
MatrixPair to_double(const ExtendedMatrixPair& mp);

/// Matrices of the alpha = beta = 1 basis. Under r -> r / alpha the whole
/// alpha = beta family follows from these with D = diag(alpha^-(deg+3)):
///   S(alpha) = D S D,  T(alpha) = alpha^2 D T D,  V(alpha) = alpha D V D.
struct UnitScaleMatrices {
  std::vector<BasisTerm> terms;
  int omega = 0;
  Matrix<DoubleDouble> overlap;
  Matrix<DoubleDouble> kinetic;
  Matrix<DoubleDouble> nuclear;    ///< without the factor Z
  Matrix<DoubleDouble> repulsion;
};

UnitScaleMatrices assemble_unit_scale(int omega);

}  // namespace hent
