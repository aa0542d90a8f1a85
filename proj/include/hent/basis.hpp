#pragma once

// Symmetrized Hylleraas basis for 1S^e states of two-electron atoms.
//
// A term (k, m, n) stands for
//   phi_kmn = exp(-a r1 - b r2) r1^k r2^m r12^n + (1 <-> 2)
// and is stored in canonical form k <= m, since (k, m, n) and (m, k, n)
// generate the same symmetrized function.

#include <compare>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace hent {

struct BasisTerm {
  int k = 0;  ///< power of r1
  int m = 0;  ///< power of r2
  int n = 0;  ///< power of r12

  constexpr int degree() const noexcept { return k + m + n; }

  friend constexpr bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

/// Shell-major order: k+m+n, then k, then m, then n.
constexpr std::strong_ordering operator<=>(const BasisTerm& a, const BasisTerm& b) noexcept {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (auto c = a.k <=> b.k; c != 0) return c;
  if (auto c = a.m <=> b.m; c != 0) return c;
  return a.n <=> b.n;
}

/// All canonical terms with k <= m and k + m + n <= omega, in shell-major order.
std::vector<BasisTerm> enumerate_terms(int omega);

/// Number of terms produced by enumerate_terms(omega), in closed form.
std::size_t term_count(int omega);

/// A variational state on a symmetrized Hylleraas basis.
class HylleraasWavefunction {
 public:
  HylleraasWavefunction(std::vector<BasisTerm> terms, Eigen::VectorXd coefficients,
                        double alpha, double beta, double nuclear_charge = 2.0,
                        bool normalized = false);

  const std::vector<BasisTerm>& terms() const noexcept { return terms_; }
  const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double nuclear_charge() const noexcept { return nuclear_charge_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t size() const noexcept { return terms_.size(); }
  int max_degree() const noexcept;

  /// Same basis and exponents, new coefficients.
  HylleraasWavefunction with_coefficients(Eigen::VectorXd coefficients, bool normalized) const;

 private:
  std::vector<BasisTerm> terms_;
  Eigen::VectorXd coefficients_;
  double alpha_;
  double beta_;
  double nuclear_charge_;
  bool normalized_;
};

/// Psi(r1, r2, r12). Throws ValidationError unless r1, r2 > 0 and the
/// triangle condition |r1 - r2| <= r12 <= r1 + r2 holds.
double evaluate(const HylleraasWavefunction& psi, double r1, double r2, double r12);

/// Coefficients A_n(r1, r2) of Psi = sum_n A_n(r1, r2) r12^n, n = 0..max_degree.
/// No triangle check; r1, r2 >= 0.
void r12_polynomial(const HylleraasWavefunction& psi, double r1, double r2,
                    Eigen::Ref<Eigen::VectorXd> out);

}  // namespace hent
