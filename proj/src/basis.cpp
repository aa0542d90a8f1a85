#include "hent/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hent/error.hpp"

namespace hent {

std::vector<BasisTerm> enumerate_terms(int omega) {
  if (omega < 0) throw ValidationError("enumerate_terms: omega must be >= 0");
  std::vector<BasisTerm> terms;
  terms.reserve(term_count(omega));
  for (int shell = 0; shell <= omega; ++shell) {
    for (int k = 0; 2 * k <= shell; ++k) {
      for (int m = k; k + m <= shell; ++m) {
        terms.push_back({k, m, shell - k - m});
      }
    }
  }
  return terms;
}

std::size_t term_count(int omega) {
  if (omega < 0) throw ValidationError("term_count: omega must be >= 0");
  std::size_t count = 0;
  for (int s = 0; s <= omega; ++s) {
    for (int t = 0; t <= s; ++t) count += static_cast<std::size_t>(t / 2 + 1);
  }
  return count;
}

HylleraasWavefunction::HylleraasWavefunction(std::vector<BasisTerm> terms,
                                             Eigen::VectorXd coefficients, double alpha,
                                             double beta, double nuclear_charge,
                                             bool normalized)
    : terms_(std::move(terms)),
      coefficients_(std::move(coefficients)),
      alpha_(alpha),
      beta_(beta),
      nuclear_charge_(nuclear_charge),
      normalized_(normalized) {
  if (static_cast<std::size_t>(coefficients_.size()) != terms_.size()) {
    throw ValidationError("HylleraasWavefunction: " + std::to_string(coefficients_.size()) +
                          " coefficients for " + std::to_string(terms_.size()) + " terms");
  }
  if (!(alpha_ > 0.0) || !(beta_ > 0.0)) {
    throw ValidationError("HylleraasWavefunction: exponents must be positive");
  }
  if (!(nuclear_charge_ > 0.0)) {
    throw ValidationError("HylleraasWavefunction: nuclear charge must be positive");
  }
  for (const auto& t : terms_) {
    if (t.k < 0 || t.m < t.k || t.n < 0) {
      throw ValidationError("HylleraasWavefunction: terms must be canonical (0 <= k <= m, n >= 0)");
    }
  }
}

int HylleraasWavefunction::max_degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

HylleraasWavefunction HylleraasWavefunction::with_coefficients(Eigen::VectorXd coefficients,
                                                               bool normalized) const {
  return {terms_, std::move(coefficients), alpha_, beta_, nuclear_charge_, normalized};
}

void r12_polynomial(const HylleraasWavefunction& psi, double r1, double r2,
                    Eigen::Ref<Eigen::VectorXd> out) {
  const int dmax = psi.max_degree();
  out.setZero();
  // Powers up to dmax of both radii.
  thread_local std::vector<double> p1;
  thread_local std::vector<double> p2;
  p1.assign(static_cast<std::size_t>(dmax) + 1, 1.0);
  p2.assign(static_cast<std::size_t>(dmax) + 1, 1.0);
  for (int i = 1; i <= dmax; ++i) {
    p1[i] = p1[i - 1] * r1;
    p2[i] = p2[i - 1] * r2;
  }
  const double direct = std::exp(-psi.alpha() * r1 - psi.beta() * r2);
  const double swapped = std::exp(-psi.alpha() * r2 - psi.beta() * r1);
  const auto& terms = psi.terms();
  const auto& c = psi.coefficients();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    out[t.n] += c[static_cast<Eigen::Index>(i)] *
                (direct * p1[t.k] * p2[t.m] + swapped * p2[t.k] * p1[t.m]);
  }
}

double evaluate(const HylleraasWavefunction& psi, double r1, double r2, double r12) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw ValidationError("evaluate: radii must be positive");
  const double slack = 1e-12 * (r1 + r2);
  if (r12 < std::fabs(r1 - r2) - slack || r12 > r1 + r2 + slack) {
    throw ValidationError("evaluate: triangle condition violated");
  }
  Eigen::VectorXd a(psi.max_degree() + 1);
  r12_polynomial(psi, r1, r2, a);
  double value = 0.0;
  for (Eigen::Index n = a.size() - 1; n >= 0; --n) value = value * r12 + a[n];
  return value;
}

}  // namespace hent
