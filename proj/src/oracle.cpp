#include "hent/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hent/error.hpp"
#include "hent/parallel.hpp"

namespace hent {

std::string to_string(TraceMethod method) {
  switch (method) {
    case TraceMethod::monte_carlo:
      return "monte_carlo";
    case TraceMethod::partial_wave_quadrature:
      return "partial_wave_quadrature";
  }
  return "unknown";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

// Uniform on (0, 1]; fixed bit recipe so streams are reproducible everywhere.
double uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11U) + 1.0) * 0x1.0p-53;
}

struct Point {
  double x, y, z, r;
};

// Gamma(3, rate) radius: density rate^3 r^2 exp(-rate r) / 2.
double sample_radius(std::mt19937_64& rng, double rate) {
  return -std::log(uniform(rng) * uniform(rng) * uniform(rng)) / rate;
}

// Uniform direction; pinned = 1 fixes the axis, 2 the azimuth only.
Point sample_point(std::mt19937_64& rng, double rate, int pinned) {
  const double r = sample_radius(rng, rate);
  if (pinned == 1) return {0.0, 0.0, r, r};
  const double cos_t = 2.0 * uniform(rng) - 1.0;
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  if (pinned == 2) return {r * sin_t, 0.0, r * cos_t, r};
  const double phi = 2.0 * std::numbers::pi * uniform(rng);
  return {r * sin_t * std::cos(phi), r * sin_t * std::sin(phi), r * cos_t, r};
}

double distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Psi evaluation with precomputed power tables.
class PsiEvaluator {
 public:
  explicit PsiEvaluator(const HylleraasWavefunction& psi)
      : psi_(psi), dmax_(psi.max_degree()) {}

  void powers(double r, double* out) const {
    out[0] = 1.0;
    for (int i = 1; i <= dmax_; ++i) out[i] = out[i - 1] * r;
  }

  double operator()(const double* pa, const double* pb, const double* pab, double ra,
                    double rb) const {
    const auto& terms = psi_.terms();
    const auto& c = psi_.coefficients();
    const double direct = std::exp(-psi_.alpha() * ra - psi_.beta() * rb);
    const double swapped = std::exp(-psi_.alpha() * rb - psi_.beta() * ra);
    double sum = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& t = terms[i];
      sum += c[static_cast<Eigen::Index>(i)] *
             (direct * pa[t.k] * pb[t.m] + swapped * pb[t.k] * pa[t.m]) * pab[t.n];
    }
    return sum;
  }

  int max_degree() const noexcept { return dmax_; }

 private:
  const HylleraasWavefunction& psi_;
  int dmax_;
};

struct StreamTotals {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

TraceEstimate trace_rho_squared_mc(const HylleraasWavefunction& psi, MonteCarloOptions options) {
  if (!psi.normalized()) throw ValidationError("trace_rho_squared_mc: wavefunction not normalized");
  if (options.samples < 10'000) throw ValidationError("trace_rho_squared_mc: need >= 1e4 samples");
  if (options.streams < 1) throw ValidationError("trace_rho_squared_mc: need >= 1 stream");
  if (options.proposal_rate < 0.0) throw ValidationError("trace_rho_squared_mc: negative proposal rate");
  const double rate =
      options.proposal_rate > 0.0 ? options.proposal_rate : std::min(psi.alpha(), psi.beta());
  if (!(rate > 0.0)) throw ValidationError("trace_rho_squared_mc: degenerate proposal rate");

  const PsiEvaluator eval(psi);
  const auto width = static_cast<std::size_t>(eval.max_degree()) + 1;
  // Inverse proposal density of one position, without the exp(rate r) factor.
  const double inv_density = 8.0 * std::numbers::pi / (rate * rate * rate);
  const double inv_density4 = std::pow(inv_density, 4);

  const auto streams = static_cast<std::size_t>(options.streams);
  std::vector<StreamTotals> totals(streams);
  parallel_for(streams, [&](std::size_t s) {
    const std::int64_t base = options.samples / options.streams;
    const std::int64_t count =
        base + (static_cast<std::int64_t>(s) < options.samples % options.streams ? 1 : 0);
    std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(s)));
    std::vector<double> pw(10 * width);
    double* p[4] = {&pw[0], &pw[width], &pw[2 * width], &pw[3 * width]};
    double* p13 = &pw[4 * width];
    double* p23 = &pw[5 * width];
    double* p24 = &pw[6 * width];
    double* p14 = &pw[7 * width];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
      std::array<Point, 4> pt;
      for (int j = 0; j < 4; ++j) {
        pt[j] = sample_point(rng, rate, j + 1);
        eval.powers(pt[j].r, p[j]);
      }
      const double d13 = distance(pt[0], pt[2]);
      const double d23 = distance(pt[1], pt[2]);
      const double d24 = distance(pt[1], pt[3]);
      const double d14 = distance(pt[0], pt[3]);
      eval.powers(d13, p13);
      eval.powers(d23, p23);
      eval.powers(d24, p24);
      eval.powers(d14, p14);
      const double r1 = pt[0].r, r2 = pt[1].r, r3 = pt[2].r, r4 = pt[3].r;
      const double product = eval(p[0], p[2], p13, r1, r3) * eval(p[1], p[2], p23, r2, r3) *
                             eval(p[1], p[3], p24, r2, r4) * eval(p[0], p[3], p14, r1, r4);
      const double w = product * inv_density4 * std::exp(rate * (r1 + r2 + r3 + r4));
      sum += w;
      sum_sq += w * w;
    }
    totals[s] = {sum, sum_sq};
  });

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& t : totals) {
    sum += t.sum;
    sum_sq += t.sum_sq;
  }
  const auto n = static_cast<double>(options.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
  TraceEstimate est;
  est.value = mean;
  est.standard_error = std::sqrt(var / n);
  est.samples_or_nodes = options.samples;
  est.method = TraceMethod::monte_carlo;
  est.seed = options.seed;
  return est;
}

TraceEstimate trace_rho_squared_pw(const SchmidtSpectrum& spectrum) {
  if (!spectrum.kernels) {
    throw ValidationError("trace_rho_squared_pw: kernels were not retained");
  }
  const PartialWaveKernels& k = *spectrum.kernels;
  const int n = k.grid.count;
  Eigen::VectorXd sqrt_w(n);
  for (int i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(k.grid.weights[i]);
  double value = 0.0;
  for (int l = 0; l <= k.l_max; ++l) {
    const Eigen::MatrixXd a = sqrt_w.asDiagonal() * k.f[l] * sqrt_w.asDiagonal();
    const Eigen::MatrixXd a2 = a * a;
    const double scale = 4.0 * std::numbers::pi / (2.0 * l + 1.0);
    value += (2.0 * l + 1.0) * std::pow(scale, 4) * a2.squaredNorm();
  }
  TraceEstimate est;
  est.value = value;
  est.standard_error = 0.0;
  est.samples_or_nodes = n;
  est.method = TraceMethod::partial_wave_quadrature;
  return est;
}

}  // namespace hent
