#pragma once

// Independent routes to Tr rho_red^2, the purity of the one-electron reduced
// density matrix, for checking the Schmidt-Slater pipeline:
//
//   Tr rho^2 = int Psi(r1,r3) Psi(r2,r3) Psi(r2,r4) Psi(r1,r4) d1 d2 d3 d4
//
// estimated by importance-sampled Monte Carlo (rotational invariance pins
// r1 to the z axis and r2 to the xz plane, leaving nine sampled coordinates),
// and the partial-wave identity
//
//   Tr rho^2 = sum_l (2l+1) (4 pi / (2l+1))^4 tr(K_l^4)
//
// evaluated from the discretized kernels without diagonalizing them.

#include <cstdint>
#include <string>

#include "hent/basis.hpp"
#include "hent/schmidt.hpp"

namespace hent {

enum class TraceMethod { monte_carlo, partial_wave_quadrature };

std::string to_string(TraceMethod method);

struct TraceEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::int64_t samples_or_nodes = 0;
  TraceMethod method = TraceMethod::monte_carlo;
  std::uint64_t seed = 0;

  double linear_entropy() const noexcept { return 1.0 - value; }
};

struct MonteCarloOptions {
  std::int64_t samples = 10'000'000;
  std::uint64_t seed = 20150306;
  /// Independent sub-streams; the estimate depends on this and the seed,
  /// never on the thread count.
  int streams = 64;
  /// Radial proposal r^2 exp(-rate r); 0 selects min(alpha, beta). The weight
  /// variance is finite only for rate < 4/3 min(alpha, beta).
  double proposal_rate = 0.0;
};

TraceEstimate trace_rho_squared_mc(const HylleraasWavefunction& psi,
                                   MonteCarloOptions options = {});

/// Needs a spectrum decomposed with keep_kernels.
TraceEstimate trace_rho_squared_pw(const SchmidtSpectrum& spectrum);

}  // namespace hent
