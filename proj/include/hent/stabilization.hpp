#pragma once

// Stabilization method: scan the exponent alpha, follow each eigenvalue (by
// sorted index) as a curve E_n(alpha), turn plateaus into a density of
// states by the inverse centered slope, and fit a Lorentzian
//   rho(E) = a (Gamma/2) / ((E - E_r)^2 + Gamma^2/4) + b.

#include <iosfwd>
#include <string>
#include <vector>

#include "hent/eigensolver.hpp"
#include "hent/error.hpp"
#include "hent/integrals.hpp"

namespace hent {

struct ScanOptions {
  double energy_ceiling = -0.5;  ///< He+ (n=2) threshold for Z = 2
  /// Largest |E_n(alpha_{i+1}) - E_n(alpha_i)| tolerated on a kept curve.
  double curve_jump_threshold = 0.1;
  AssembleOptions assemble{};
  /// true: one double-double orthogonalization reused for every alpha by
  /// dilation. false: assemble and solve in double at each alpha.
  bool extended_precision = true;
  /// 0 picks 1e-24 (extended) or 1e-12 (double).
  double rank_tolerance = 0.0;
};

double default_rank_tolerance(bool extended_precision);

struct StabilizationScan {
  std::vector<double> alphas;
  /// curves[n][i] = E_n(alphas[i]); K curves where K is the largest number of
  /// eigenvalues below the ceiling at any grid point. Every curve is stored
  /// on every grid point, including stretches above the ceiling.
  std::vector<std::vector<double>> curves;
  int omega = 0;
  double nuclear_charge = 2.0;
  double energy_ceiling = -0.5;
  Eigen::Index retained_rank = 0;

  std::size_t curve_count() const noexcept { return curves.size(); }
};

/// alpha_i = alpha_min + i * step for i = 0 .. round((max - min) / step).
std::vector<double> alpha_grid(double alpha_min, double alpha_max, double alpha_step);

StabilizationScan scan(int omega, double alpha_min, double alpha_max, double alpha_step,
                       double nuclear_charge = 2.0, const ScanOptions& options = {});

/// Same, reusing a prepared family (e.g. for several ranges at one omega).
StabilizationScan scan(const DilationFamily& family, const std::vector<double>& alphas,
                       const ScanOptions& options = {});

/// Raised when the solver fails at some alpha; `partial` holds the grid up to
/// (not including) the first failing point.
class ScanError : public NumericalError {
 public:
  ScanError(const std::string& what, StabilizationScan partial, double failed_alpha)
      : NumericalError(what), partial_(std::move(partial)), failed_alpha_(failed_alpha) {}
  const StabilizationScan& partial() const noexcept { return partial_; }
  double failed_alpha() const noexcept { return failed_alpha_; }

 private:
  StabilizationScan partial_;
  double failed_alpha_;
};

struct AlphaWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const AlphaWindow&) const = default;
};

struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const EnergyWindow&) const = default;
};

struct DensityPoint {
  double energy = 0.0;
  double rho = 0.0;
};

struct DensityCurve {
  std::size_t curve_index = 0;
  AlphaWindow window;
  std::vector<DensityPoint> points;
};

/// rho_i = (alpha_{i+1} - alpha_{i-1}) / (E_{i+1} - E_{i-1}) at abscissa E_i,
/// for grid points i with alpha_i in the window, grid endpoints excluded.
/// Rejects E_{i+1} = E_{i-1} and curves that are not monotone there.
DensityCurve density_of_states(const StabilizationScan& scan, std::size_t curve_index,
                               AlphaWindow window);

struct FitOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;
  std::size_t min_points = 8;
};

struct ResonanceFit {
  double e_r = 0.0;
  double gamma = 0.0;
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
  double residual_norm = 0.0;
  std::size_t curve_index = 0;
  AlphaWindow window;
  std::size_t points = 0;
  int iterations = 0;
};

double lorentzian(double energy, double a, double b, double e_r, double gamma);

/// Levenberg-Marquardt least squares on (a, b, E_r, Gamma); deterministic.
ResonanceFit fit_lorentzian(const DensityCurve& dc, const FitOptions& options = {});

/// Max r^2; ties go to the smaller residual norm, then the lower curve index.
ResonanceFit select_best_plateau(const std::vector<ResonanceFit>& fits);

/// Runs of one curve that cross an energy window completely: contiguous grid
/// points with E in the window, at least min_points long, not touching the
/// ends of the alpha grid, monotone, with the density maximum inside.
std::vector<DensityCurve> plateau_candidates(const StabilizationScan& scan,
                                             EnergyWindow window, std::size_t min_points = 8);

struct StateFit {
  std::vector<ResonanceFit> candidates;  ///< every candidate that fitted
  ResonanceFit best;
};

/// Candidates in the window, fitted, best chosen. Throws NumericalError when
/// no candidate survives.
StateFit fit_state(const StabilizationScan& scan, EnergyWindow window,
                   const FitOptions& options = {});

/// Automatic detection: stretches where a curve's |dE/dalpha| is below
/// `ratio` times the smaller slope of its neighbouring curves.
struct PlateauHint {
  std::size_t curve_index = 0;
  AlphaWindow window;
  double energy_min = 0.0;
  double energy_max = 0.0;
  std::size_t points = 0;
};
std::vector<PlateauHint> detect_plateaus(const StabilizationScan& scan, double ratio = 0.5,
                                         std::size_t min_points = 8);

/// Grid alpha on the curve whose energy is nearest `energy` inside the window.
double nearest_alpha(const StabilizationScan& scan, std::size_t curve_index, AlphaWindow window,
                     double energy);

struct ResonanceState {
  std::string label;
  EnergyWindow window;
};

/// 2s2, 2p2, 2s3s 1Se energy windows for Z = 2 (a.u.).
const std::vector<ResonanceState>& helium_resonances();
const ResonanceState& find_resonance(const std::string& label);

// Persistence. Numbers use the shortest form that reads back exactly.
// `comment` lines are written first, each prefixed with '#'.
void write_scan_csv(std::ostream& out, const StabilizationScan& scan,
                    const std::vector<std::string>& comment = {});
StabilizationScan read_scan_csv(std::istream& in);
void write_density_csv(std::ostream& out, const DensityCurve& dc,
                       const std::vector<std::string>& comment = {});

}  // namespace hent
