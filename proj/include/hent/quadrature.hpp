#pragma once

#include <vector>

namespace hent {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
/// Exact for polynomials of degree <= 2n - 1.
QuadratureRule gauss_legendre(int n);

/// The same rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// P_0(x) .. P_lmax(x) by the three-term recurrence.
void legendre_values(double x, int lmax, double* out);

}  // namespace hent
