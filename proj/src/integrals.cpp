#include "hent/integrals.hpp"

#include <algorithm>
#include <string>

#include "hent/error.hpp"

namespace hent {
namespace {

// pi^2 to double-double precision.
constexpr DoubleDouble kPiSquared(9.869604401089358, 6.265295508739711e-16);

const std::vector<DoubleDouble>& factorials() {
  static const std::vector<DoubleDouble> table = [] {
    std::vector<DoubleDouble> f(171);
    f[0] = DoubleDouble(1.0);
    for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
    return f;
  }();
  return table;
}

DoubleDouble binomial(int n, int k) {
  const auto& f = factorials();
  return f[n] / (f[k] * f[n - k]);
}

}  // namespace

IntegralTable::IntegralTable(DoubleDouble exponent1, DoubleDouble exponent2)
    : exp1_(exponent1), exp2_(exponent2) {
  if (!(exp1_ > DoubleDouble(0.0)) || !(exp2_ > DoubleDouble(0.0))) {
    throw ValidationError("IntegralTable: exponents must be positive");
  }
  grow(8);
}

void IntegralTable::grow(int needed) {
  if (needed <= dim_) return;
  int dim = std::max(needed, 2 * dim_);
  std::vector<DoubleDouble> values(static_cast<std::size_t>(dim) * dim * dim);
  std::vector<char> known(values.size(), 0);
  for (int p = 0; p < dim_; ++p) {
    for (int q = 0; q < dim_; ++q) {
      for (int s = 0; s < dim_; ++s) {
        const std::size_t from = (static_cast<std::size_t>(p) * dim_ + q) * dim_ + s;
        const std::size_t to = (static_cast<std::size_t>(p) * dim + q) * dim + s;
        values[to] = values_[from];
        known[to] = known_[from];
      }
    }
  }
  values_ = std::move(values);
  known_ = std::move(known);
  dim_ = dim;

  // Powers needed by ordered(): up to outer + inner + 1 <= 3 * dim.
  const std::size_t np = static_cast<std::size_t>(3 * dim + 4);
  inv1_.assign(np, DoubleDouble(1.0));
  inv2_.assign(np, DoubleDouble(1.0));
  inv12_.assign(np, DoubleDouble(1.0));
  const DoubleDouble r1 = DoubleDouble(1.0) / exp1_;
  const DoubleDouble r2 = DoubleDouble(1.0) / exp2_;
  const DoubleDouble r12 = DoubleDouble(1.0) / (exp1_ + exp2_);
  for (std::size_t i = 1; i < np; ++i) {
    inv1_[i] = inv1_[i - 1] * r1;
    inv2_[i] = inv2_[i - 1] * r2;
    inv12_[i] = inv12_[i - 1] * r12;
  }
}

DoubleDouble IntegralTable::operator()(int a, int b, int c) {
  if (a < -1 || b < -1 || c < -1) {
    throw ValidationError("base integral: exponents below -1 are not supported (a=" +
                          std::to_string(a) + ", b=" + std::to_string(b) +
                          ", c=" + std::to_string(c) + ")");
  }
  return 8.0 * kPiSquared * radial(a + 1, b + 1, c + 1);
}

// J(p, q, s) = int_0^inf int_0^inf int_{|r1-r2|}^{r1+r2} r1^p r2^q u^s
//              exp(-A r1 - B r2) du dr2 dr1
// The u-integral is [(r1+r2)^{s+1} - |r1-r2|^{s+1}] / (s+1); expanded on each
// side of r1 = r2 only odd binomial terms survive, each with a factor 2. All
// contributions are positive.
DoubleDouble IntegralTable::radial(int p, int q, int s) {
  grow(std::max({p, q, s}) + 1);
  const std::size_t idx = (static_cast<std::size_t>(p) * dim_ + q) * dim_ + s;
  if (known_[idx] != 0) return values_[idx];
  DoubleDouble sum(0.0);
  for (int j = 1; j <= s + 1; j += 2) {
    const DoubleDouble w = ordered(p + s + 1 - j, q + j, false) + ordered(q + s + 1 - j, p + j, true);
    sum += binomial(s + 1, j) * w;
  }
  const DoubleDouble value = 2.0 * sum / static_cast<double>(s + 1);
  values_[idx] = value;
  known_[idx] = 1;
  return value;
}

// W = int_0^inf x^P e^{-A x} int_0^x y^Q e^{-B y} dy dx
//   = sum_{i=0}^{P} P! (Q+i)! / i! * A^{i-P-1} (A+B)^{-(Q+i+1)}
// With swapped = true the roles of A and B are exchanged.
DoubleDouble IntegralTable::ordered(int outer_power, int inner_power, bool swapped) {
  const auto& f = factorials();
  const auto& inv_outer = swapped ? inv2_ : inv1_;
  const int P = outer_power;
  const int Q = inner_power;
  DoubleDouble sum(0.0);
  for (int i = 0; i <= P; ++i) {
    sum += f[Q + i] / f[i] * inv_outer[P + 1 - i] * inv12_[Q + i + 1];
  }
  return f[P] * sum;
}

double base_integral(int a, int b, int c, double alpha, double beta) {
  if (a < 0 || b < 0) throw ValidationError("base_integral: powers of r1, r2 must be >= 0");
  if (c < -1) throw ValidationError("base_integral: power of r12 must be >= -1");
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ValidationError("base_integral: exponents must be positive");
  }
  IntegralTable table{DoubleDouble(alpha), DoubleDouble(beta)};
  return to_double(table(a, b, c));
}

namespace {

struct Primitive {
  int k, m, n;
  DoubleDouble a, b;
};

// <chi1 | O | chi2> for unsymmetrized chi = r1^k r2^m r12^n exp(-a r1 - b r2).
ElementParts primitive_pair(const Primitive& p1, const Primitive& p2, IntegralTable& table) {
  const int K = p1.k + p2.k;
  const int M = p1.m + p2.m;
  const int N = p1.n + p2.n;
  auto I = [&](int da, int db, int dc) { return table(K + da, M + db, N + dc); };

  ElementParts parts;
  parts.overlap = I(0, 0, 0);
  parts.nuclear = -(I(-1, 0, 0) + I(0, -1, 0));
  parts.repulsion = I(0, 0, -1);

  // grad_i chi1 . grad_i chi2 for the electron with radial power k, exponent a,
  // and partner power index offsets; `first` selects electron 1 or 2.
  auto gradient_part = [&](bool first) {
    const int k1 = first ? p1.k : p1.m;
    const int k2 = first ? p2.k : p2.m;
    const DoubleDouble a1 = first ? p1.a : p1.b;
    const DoubleDouble a2 = first ? p2.a : p2.b;
    const int n1 = p1.n;
    const int n2 = p2.n;
    // Shifts (own radius, other radius, r12).
    auto J = [&](int d_own, int d_other, int d12) {
      return first ? I(d_own, d_other, d12) : I(d_other, d_own, d12);
    };
    DoubleDouble sum(0.0);
    if (k1 * k2 != 0) sum += static_cast<double>(k1 * k2) * J(-2, 0, 0);
    const DoubleDouble ka = static_cast<double>(k1) * a2 + static_cast<double>(k2) * a1;
    if (k1 + k2 != 0) sum -= ka * J(-1, 0, 0);
    sum += a1 * a2 * J(0, 0, 0);
    if (n1 * n2 != 0) sum += static_cast<double>(n1 * n2) * J(0, 0, -2);
    // (chi1_r chi2_r12 + chi1_r12 chi2_r) (r^2 - r_other^2 + r12^2) / (2 r r12)
    const int kn = k1 * n2 + n1 * k2;
    if (kn != 0) {
      sum += 0.5 * static_cast<double>(kn) * (J(0, 0, -2) - J(-2, 2, -2) + J(-2, 0, 0));
    }
    if (n1 + n2 != 0) {
      const DoubleDouble an = a1 * static_cast<double>(n2) + a2 * static_cast<double>(n1);
      sum -= 0.5 * an * (J(1, 0, -2) - J(-1, 2, -2) + J(-1, 0, 0));
    }
    return sum;
  };
  parts.kinetic = 0.5 * (gradient_part(true) + gradient_part(false));
  return parts;
}

}  // namespace

ElementEvaluator::ElementEvaluator(double alpha, double beta)
    : alpha_(alpha),
      beta_(beta),
      direct_(DoubleDouble(2.0 * alpha), DoubleDouble(2.0 * beta)),
      exchange_(DoubleDouble(alpha) + beta, DoubleDouble(alpha) + beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw ValidationError("ElementEvaluator: exponents must be positive");
  }
}

// phi_t = chi(k,m,n; a,b) + chi(m,k,n; b,a). For an exchange-symmetric
// operator <phi_s|O|phi_t> = 2 (<chi_s|O|chi_t> + <chi_s|O|chi_t'>).
ElementParts ElementEvaluator::operator()(const BasisTerm& t1, const BasisTerm& t2) {
  const DoubleDouble a(alpha_);
  const DoubleDouble b(beta_);
  const Primitive s{t1.k, t1.m, t1.n, a, b};
  const Primitive t{t2.k, t2.m, t2.n, a, b};
  const Primitive t_swapped{t2.m, t2.k, t2.n, b, a};
  const ElementParts d = primitive_pair(s, t, direct_);
  const ElementParts x = primitive_pair(s, t_swapped, exchange_);
  return {2.0 * (d.overlap + x.overlap), 2.0 * (d.kinetic + x.kinetic),
          2.0 * (d.nuclear + x.nuclear), 2.0 * (d.repulsion + x.repulsion)};
}

double overlap_element(const BasisTerm& t1, const BasisTerm& t2, double alpha, double beta) {
  ElementEvaluator eval(alpha, beta);
  return to_double(eval(t1, t2).overlap);
}

double hamiltonian_element(const BasisTerm& t1, const BasisTerm& t2, double alpha, double beta,
                           double nuclear_charge, bool interaction) {
  if (!(nuclear_charge > 0.0)) throw ValidationError("hamiltonian_element: Z must be positive");
  ElementEvaluator eval(alpha, beta);
  const ElementParts p = eval(t1, t2);
  DoubleDouble h = p.kinetic + nuclear_charge * p.nuclear;
  if (interaction) h += p.repulsion;
  return to_double(h);
}

ExtendedMatrixPair assemble_extended(int omega, double alpha, double beta, double nuclear_charge,
                                     AssembleOptions options) {
  if (!(nuclear_charge > 0.0)) throw ValidationError("assemble: Z must be positive");
  ExtendedMatrixPair mp;
  mp.terms = enumerate_terms(omega);
  mp.basis_omega = omega;
  mp.alpha = alpha;
  mp.beta = beta;
  mp.nuclear_charge = nuclear_charge;
  const auto n = static_cast<Eigen::Index>(mp.terms.size());
  mp.overlap.resize(n, n);
  mp.hamiltonian.resize(n, n);
  ElementEvaluator eval(alpha, beta);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const ElementParts p = eval(mp.terms[i], mp.terms[j]);
      DoubleDouble h = p.kinetic + nuclear_charge * p.nuclear;
      if (options.interaction) h += p.repulsion;
      mp.overlap(i, j) = mp.overlap(j, i) = p.overlap;
      mp.hamiltonian(i, j) = mp.hamiltonian(j, i) = h;
    }
  }
  return mp;
}

MatrixPair to_double(const ExtendedMatrixPair& mp) {
  MatrixPair out;
  out.overlap = mp.overlap.unaryExpr([](const DoubleDouble& x) { return to_double(x); });
  out.hamiltonian = mp.hamiltonian.unaryExpr([](const DoubleDouble& x) { return to_double(x); });
  out.terms = mp.terms;
  out.basis_omega = mp.basis_omega;
  out.alpha = mp.alpha;
  out.beta = mp.beta;
  out.nuclear_charge = mp.nuclear_charge;
  return out;
}

MatrixPair assemble(int omega, double alpha, double beta, double nuclear_charge,
                    AssembleOptions options) {
  return to_double(assemble_extended(omega, alpha, beta, nuclear_charge, options));
}

UnitScaleMatrices assemble_unit_scale(int omega) {
  UnitScaleMatrices u;
  u.terms = enumerate_terms(omega);
  u.omega = omega;
  const auto n = static_cast<Eigen::Index>(u.terms.size());
  u.overlap.resize(n, n);
  u.kinetic.resize(n, n);
  u.nuclear.resize(n, n);
  u.repulsion.resize(n, n);
  ElementEvaluator eval(1.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const ElementParts p = eval(u.terms[i], u.terms[j]);
      u.overlap(i, j) = u.overlap(j, i) = p.overlap;
      u.kinetic(i, j) = u.kinetic(j, i) = p.kinetic;
      u.nuclear(i, j) = u.nuclear(j, i) = p.nuclear;
      u.repulsion(i, j) = u.repulsion(j, i) = p.repulsion;
    }
  }
  return u;
}

}  // namespace hent
