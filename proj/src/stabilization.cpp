#include "hent/stabilization.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

#include "hent/error.hpp"
#include "hent/parallel.hpp"

namespace hent {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_double(std::string_view s, const char* what) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError(std::string(what) + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool in_window(double alpha, AlphaWindow w) {
  const double slack = 1e-9 * std::max(1.0, std::fabs(w.hi));
  return alpha >= w.lo - slack && alpha <= w.hi + slack;
}

const std::vector<double>& curve_at(const StabilizationScan& scan, std::size_t index) {
  if (index >= scan.curves.size()) {
    throw ValidationError("curve index " + std::to_string(index) + " out of range (" +
                          std::to_string(scan.curves.size()) + " curves)");
  }
  return scan.curves[index];
}

}  // namespace

std::vector<double> alpha_grid(double alpha_min, double alpha_max, double alpha_step) {
  if (!(alpha_min > 0.0)) throw ValidationError("alpha_min must be > 0");
  if (!(alpha_max > alpha_min)) throw ValidationError("alpha_max must exceed alpha_min");
  if (!(alpha_step > 0.0)) throw ValidationError("alpha_step must be > 0");
  const double span = (alpha_max - alpha_min) / alpha_step;
  if (span > 1e7) throw ValidationError("alpha grid too large");
  const auto last = static_cast<std::size_t>(std::floor(span + 1e-9));
  if (last < 2) throw ValidationError("alpha grid needs at least 3 points");
  std::vector<double> g(last + 1);
  // Rounded to 12 significant digits so 0.2 + 3 * 0.002 prints as 0.206.
  for (std::size_t i = 0; i <= last; ++i) {
    const double a = alpha_min + static_cast<double>(i) * alpha_step;
    const double scale = std::pow(10.0, 11 - std::floor(std::log10(a)));
    g[i] = std::round(a * scale) / scale;
  }
  return g;
}

double default_rank_tolerance(bool extended_precision) {
  return extended_precision ? 1e-24 : 1e-12;
}

namespace {

// Curves from the first `done` spectra.
StabilizationScan collect(const std::vector<double>& alphas, std::vector<Eigen::VectorXd> spectra,
                          std::size_t done, const ScanOptions& options, int omega, double z,
                          Eigen::Index rank) {
  StabilizationScan s;
  s.omega = omega;
  s.nuclear_charge = z;
  s.energy_ceiling = options.energy_ceiling;
  s.retained_rank = rank;
  s.alphas.assign(alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(done));
  std::size_t kept = 0;
  for (std::size_t i = 0; i < done; ++i) {
    const auto below = static_cast<std::size_t>((spectra[i].array() < options.energy_ceiling).count());
    kept = std::max(kept, below);
  }
  for (std::size_t i = 0; i < done; ++i) {
    if (static_cast<std::size_t>(spectra[i].size()) < kept) {
      throw NumericalError("scan: only " + std::to_string(spectra[i].size()) +
                           " eigenvalues at alpha = " + format_double(alphas[i]) + ", need " +
                           std::to_string(kept) + " (rank loss)");
    }
  }
  s.curves.assign(kept, std::vector<double>(done));
  for (std::size_t i = 0; i < done; ++i) {
    for (std::size_t n = 0; n < kept; ++n) {
      s.curves[n][i] = spectra[i][static_cast<Eigen::Index>(n)];
    }
  }
  return s;
}

template <class Spectrum>
StabilizationScan run_scan(const std::vector<double>& alphas, const ScanOptions& options,
                           int omega, double z, Spectrum&& spectrum) {
  if (alphas.size() < 3) throw ValidationError("scan: need at least 3 grid points");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw ValidationError("scan: alpha must be > 0");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw ValidationError("scan: alpha grid must be strictly ascending");
    }
  }
  std::vector<Eigen::VectorXd> spectra(alphas.size());
  std::vector<Eigen::Index> ranks(alphas.size(), 0);
  std::vector<std::string> errors(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    try {
      spectra[i] = spectrum(alphas[i], ranks[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::size_t done = 0;
  while (done < alphas.size() && errors[done].empty()) ++done;
  Eigen::Index rank = std::numeric_limits<Eigen::Index>::max();
  for (std::size_t i = 0; i < done; ++i) rank = std::min(rank, ranks[i]);
  if (done == 0) rank = 0;
  if (done < alphas.size()) {
    StabilizationScan partial =
        collect(alphas, std::move(spectra), done, options, omega, z, rank);
    throw ScanError("scan failed at alpha = " + format_double(alphas[done]) + ": " + errors[done],
                    std::move(partial), alphas[done]);
  }
  StabilizationScan s = collect(alphas, std::move(spectra), done, options, omega, z, rank);
  if (s.curves.empty()) throw NumericalError("scan: no eigenvalue below the energy ceiling");
  for (std::size_t n = 0; n < s.curves.size(); ++n) {
    for (std::size_t i = 1; i < alphas.size(); ++i) {
      const double jump = std::fabs(s.curves[n][i] - s.curves[n][i - 1]);
      if (jump > options.curve_jump_threshold) {
        throw NumericalError("scan: curve " + std::to_string(n) + " jumps by " +
                             format_double(jump) + " a.u. at alpha = " + format_double(alphas[i]));
      }
    }
  }
  return s;
}

}  // namespace

StabilizationScan scan(int omega, double alpha_min, double alpha_max, double alpha_step,
                       double nuclear_charge, const ScanOptions& options) {
  const std::vector<double> alphas = alpha_grid(alpha_min, alpha_max, alpha_step);
  if (!(nuclear_charge > 0.0)) throw ValidationError("Z must be > 0");
  const double tol = options.rank_tolerance > 0.0 ? options.rank_tolerance
                                                  : default_rank_tolerance(options.extended_precision);
  if (options.extended_precision) {
    const DilationFamily family(assemble_unit_scale(omega), nuclear_charge, options.assemble,
                                SolverOptions{tol});
    return scan(family, alphas, options);
  }
  return run_scan(alphas, options, omega, nuclear_charge, [&](double a, Eigen::Index& rank) {
    const SpectrumResult r =
        solve(assemble(omega, a, a, nuclear_charge, options.assemble), SolverOptions{tol});
    rank = r.retained_rank;
    return r.energies;
  });
}

StabilizationScan scan(const DilationFamily& family, const std::vector<double>& alphas,
                       const ScanOptions& options) {
  return run_scan(alphas, options, family.omega(), family.nuclear_charge(),
                  [&](double a, Eigen::Index& rank) {
                    rank = family.retained_rank();
                    return family.energies(a);
                  });
}

DensityCurve density_of_states(const StabilizationScan& scan, std::size_t curve_index,
                               AlphaWindow window) {
  const auto& e = curve_at(scan, curve_index);
  const auto& a = scan.alphas;
  if (!(window.hi > window.lo)) throw ValidationError("density_of_states: empty alpha window");
  if (window.lo < a.front() || window.hi > a.back()) {
    throw ValidationError("density_of_states: window outside the alpha grid");
  }
  DensityCurve dc;
  dc.curve_index = curve_index;
  dc.window = window;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    if (!in_window(a[i], window)) continue;
    const double de = e[i + 1] - e[i - 1];
    if (de == 0.0) {
      throw ValidationError("density_of_states: flat curve at alpha = " + format_double(a[i]));
    }
    dc.points.push_back({e[i], (a[i + 1] - a[i - 1]) / de});
  }
  if (dc.points.empty()) throw ValidationError("density_of_states: no interior grid point in window");
  const bool positive = dc.points.front().rho > 0.0;
  for (const auto& p : dc.points) {
    if (!std::isfinite(p.rho) || (p.rho > 0.0) != positive) {
      throw ValidationError("density_of_states: curve not monotone in window");
    }
  }
  return dc;
}

double lorentzian(double energy, double a, double b, double e_r, double gamma) {
  const double h = 0.5 * gamma;
  const double d = energy - e_r;
  return a * h / (d * d + h * h) + b;
}

namespace {

struct Problem {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

double sum_squares(const Problem& p, const Eigen::Vector4d& q) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    const double r = p.y[i] - lorentzian(p.x[i], q[0], q[1], q[2], q[3]);
    s += r * r;
  }
  return s;
}

void jacobian(const Problem& p, const Eigen::Vector4d& q, Eigen::MatrixXd& jac,
              Eigen::VectorXd& res) {
  const double a = q[0];
  const double h = 0.5 * q[3];
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    const double d = p.x[i] - q[2];
    const double den = d * d + h * h;
    res[i] = p.y[i] - (a * h / den + q[1]);
    jac(i, 0) = h / den;
    jac(i, 1) = 1.0;
    jac(i, 2) = 2.0 * a * h * d / (den * den);
    jac(i, 3) = 0.5 * a * (d * d - h * h) / (den * den);
  }
}

// Initial guess on scaled data: peak position at the maximum, baseline from
// the lower window edge, width from the half maximum above it.
Eigen::Vector4d initial_guess(const Problem& p) {
  const Eigen::Index n = p.x.size();
  Eigen::Index peak = 0;
  p.y.maxCoeff(&peak);
  const double ymax = p.y[peak];
  const double base = std::min(p.y[0], p.y[n - 1]);
  const double half = base + 0.5 * (ymax - base);
  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (Eigen::Index i = peak; i > 0; --i) {
    if (p.y[i - 1] <= half) {
      const double t = (half - p.y[i - 1]) / (p.y[i] - p.y[i - 1]);
      left = p.x[i - 1] + t * (p.x[i] - p.x[i - 1]);
      break;
    }
  }
  for (Eigen::Index i = peak; i + 1 < n; ++i) {
    if (p.y[i + 1] <= half) {
      const double t = (p.y[i] - half) / (p.y[i] - p.y[i + 1]);
      right = p.x[i] + t * (p.x[i + 1] - p.x[i]);
      break;
    }
  }
  double width;
  if (std::isfinite(left) && std::isfinite(right)) {
    width = right - left;
  } else if (std::isfinite(left)) {
    width = 2.0 * std::fabs(p.x[peak] - left);
  } else if (std::isfinite(right)) {
    width = 2.0 * std::fabs(right - p.x[peak]);
  } else {
    width = std::fabs(p.x[n - 1] - p.x[0]);
  }
  width = std::max(width, 1e-6 * std::fabs(p.x[n - 1] - p.x[0]));
  return {(ymax - base) * 0.5 * width, base, p.x[peak], width};
}

}  // namespace

ResonanceFit fit_lorentzian(const DensityCurve& dc, const FitOptions& options) {
  const auto n = static_cast<Eigen::Index>(dc.points.size());
  if (dc.points.size() < options.min_points || n < 5) {
    throw ValidationError("fit_lorentzian: need at least " + std::to_string(options.min_points) +
                          " points, got " + std::to_string(n));
  }
  // Work with the sign that makes the peak positive, and with energies and
  // densities scaled to order one.
  double total = 0.0;
  for (const auto& pt : dc.points) total += pt.rho;
  const double sign = total < 0.0 ? -1.0 : 1.0;
  double emin = dc.points.front().energy;
  double emax = emin;
  double ymax = 0.0;
  for (const auto& pt : dc.points) {
    emin = std::min(emin, pt.energy);
    emax = std::max(emax, pt.energy);
    ymax = std::max(ymax, std::fabs(pt.rho));
  }
  const double ecenter = 0.5 * (emin + emax);
  const double escale = emax - emin;
  if (!(escale > 0.0) || !(ymax > 0.0)) throw ValidationError("fit_lorentzian: degenerate window");

  Problem p{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    p.x[i] = (dc.points[static_cast<std::size_t>(i)].energy - ecenter) / escale;
    p.y[i] = sign * dc.points[static_cast<std::size_t>(i)].rho / ymax;
  }
  Eigen::Index peak = 0;
  p.y.maxCoeff(&peak);
  if (peak == 0 || peak == n - 1) {
    throw NumericalError("fit_lorentzian: no interior maximum in window");
  }

  Eigen::Vector4d q = initial_guess(p);
  Eigen::MatrixXd jac(n, 4);
  Eigen::VectorXd res(n);
  double ssr = sum_squares(p, q);
  const double floor_ssr = std::pow(options.tolerance, 2) * p.y.squaredNorm();
  double mu = 1e-3;
  bool converged = ssr <= floor_ssr;
  int iter = 0;
  while (!converged && iter < options.max_iterations) {
    ++iter;
    jacobian(p, q, jac, res);
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d g = jac.transpose() * res;
    const Eigen::Vector4d diag = jtj.diagonal().cwiseMax(1e-300);
    // Gradient small relative to the residual: stationary.
    if ((g.array().abs() / diag.array().sqrt()).maxCoeff() <=
        options.tolerance * std::max(std::sqrt(ssr), 1e-300)) {
      converged = true;
      break;
    }
    bool accepted = false;
    while (!accepted) {
      Eigen::Matrix4d lhs = jtj;
      lhs.diagonal() += mu * diag;
      const Eigen::Vector4d step = lhs.ldlt().solve(g);
      const Eigen::Vector4d trial = q + step;
      const double trial_ssr = sum_squares(p, trial);
      if (std::isfinite(trial_ssr) && trial_ssr < ssr) {
        const double drop = ssr - trial_ssr;
        q = trial;
        ssr = trial_ssr;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
        if (drop <= options.tolerance * trial_ssr || ssr <= floor_ssr) converged = true;
      } else {
        mu *= 4.0;
        if (mu > 1e16) {
          // No descent direction left at working precision.
          converged = true;
          break;
        }
      }
    }
  }
  if (!converged) {
    throw NumericalError("fit_lorentzian: no convergence after " +
                         std::to_string(options.max_iterations) + " iterations");
  }
  if (q[3] < 0.0) {
    q[0] = -q[0];
    q[3] = -q[3];
  }
  if (!(q[3] > 0.0)) throw NumericalError("fit_lorentzian: zero width");

  ResonanceFit fit;
  fit.a = sign * q[0] * escale * ymax;
  fit.b = sign * q[1] * ymax;
  fit.e_r = ecenter + escale * q[2];
  fit.gamma = escale * q[3];
  double mean = 0.0;
  for (const auto& pt : dc.points) mean += pt.rho;
  mean /= static_cast<double>(n);
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& pt : dc.points) {
    const double r = pt.rho - lorentzian(pt.energy, fit.a, fit.b, fit.e_r, fit.gamma);
    ss_res += r * r;
    ss_tot += (pt.rho - mean) * (pt.rho - mean);
  }
  fit.residual_norm = std::sqrt(ss_res);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.curve_index = dc.curve_index;
  fit.window = dc.window;
  fit.points = dc.points.size();
  fit.iterations = iter;
  return fit;
}

ResonanceFit select_best_plateau(const std::vector<ResonanceFit>& fits) {
  if (fits.empty()) throw ValidationError("select_best_plateau: no fits");
  const auto better = [](const ResonanceFit& x, const ResonanceFit& y) {
    if (x.r_squared != y.r_squared) return x.r_squared > y.r_squared;
    if (x.residual_norm != y.residual_norm) return x.residual_norm < y.residual_norm;
    return x.curve_index < y.curve_index;
  };
  const ResonanceFit* best = &fits.front();
  for (const auto& f : fits) {
    if (better(f, *best)) best = &f;
  }
  return *best;
}

std::vector<DensityCurve> plateau_candidates(const StabilizationScan& scan, EnergyWindow window,
                                             std::size_t min_points) {
  if (!(window.hi > window.lo)) throw ValidationError("plateau_candidates: empty energy window");
  const auto& a = scan.alphas;
  const std::size_t m = a.size();
  std::vector<DensityCurve> out;
  for (std::size_t k = 0; k < scan.curves.size(); ++k) {
    const auto& e = scan.curves[k];
    std::size_t i = 1;
    while (i + 1 < m) {
      if (!(e[i] > window.lo && e[i] < window.hi)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 2 < m && e[j + 1] > window.lo && e[j + 1] < window.hi) ++j;
      const std::size_t first = i;
      const std::size_t last = j;
      i = j + 1;
      // The run must cross the window, not be cut off by the grid.
      if (last - first + 1 < min_points || first == 1 || last + 2 == m) continue;
      DensityCurve dc;
      try {
        dc = density_of_states(scan, k, {a[first], a[last]});
      } catch (const ValidationError&) {
        continue;  // not monotone
      }
      std::size_t peak = 0;
      for (std::size_t t = 1; t < dc.points.size(); ++t) {
        if (std::fabs(dc.points[t].rho) > std::fabs(dc.points[peak].rho)) peak = t;
      }
      if (peak == 0 || peak + 1 == dc.points.size()) continue;
      out.push_back(std::move(dc));
    }
  }
  return out;
}

StateFit fit_state(const StabilizationScan& scan, EnergyWindow window, const FitOptions& options) {
  StateFit sf;
  for (const auto& dc : plateau_candidates(scan, window, options.min_points)) {
    try {
      sf.candidates.push_back(fit_lorentzian(dc, options));
    } catch (const NumericalError&) {
      // a candidate that will not fit is simply not a plateau
    }
  }
  if (sf.candidates.empty()) {
    throw NumericalError("fit_state: no plateau crosses the energy window [" +
                         format_double(window.lo) + ", " + format_double(window.hi) + "]");
  }
  sf.best = select_best_plateau(sf.candidates);
  return sf;
}

std::vector<PlateauHint> detect_plateaus(const StabilizationScan& scan, double ratio,
                                         std::size_t min_points) {
  const auto& a = scan.alphas;
  const std::size_t m = a.size();
  const std::size_t kc = scan.curves.size();
  auto slope = [&](std::size_t k, std::size_t i) {
    return std::fabs((scan.curves[k][i + 1] - scan.curves[k][i - 1]) / (a[i + 1] - a[i - 1]));
  };
  std::vector<PlateauHint> out;
  for (std::size_t k = 0; k < kc; ++k) {
    std::size_t run = 0;
    auto flush = [&](std::size_t end) {  // run ends before grid index `end`
      if (run >= min_points) {
        PlateauHint h;
        h.curve_index = k;
        h.window = {a[end - run], a[end - 1]};
        h.energy_min = h.energy_max = scan.curves[k][end - run];
        for (std::size_t t = end - run; t < end; ++t) {
          h.energy_min = std::min(h.energy_min, scan.curves[k][t]);
          h.energy_max = std::max(h.energy_max, scan.curves[k][t]);
        }
        h.points = run;
        out.push_back(h);
      }
      run = 0;
    };
    for (std::size_t i = 1; i + 1 < m; ++i) {
      double ref = std::numeric_limits<double>::infinity();
      if (k > 0) ref = std::min(ref, slope(k - 1, i));
      if (k + 1 < kc) ref = std::min(ref, slope(k + 1, i));
      const bool flat = std::isfinite(ref) && scan.curves[k][i] < scan.energy_ceiling &&
                        slope(k, i) < ratio * ref;
      if (flat) {
        ++run;
      } else {
        flush(i);
      }
    }
    flush(m - 1);
  }
  return out;
}

double nearest_alpha(const StabilizationScan& scan, std::size_t curve_index, AlphaWindow window,
                     double energy) {
  const auto& e = curve_at(scan, curve_index);
  double best = std::numeric_limits<double>::infinity();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
    if (!in_window(scan.alphas[i], window)) continue;
    const double d = std::fabs(e[i] - energy);
    if (d < best) {
      best = d;
      alpha = scan.alphas[i];
    }
  }
  if (!std::isfinite(alpha)) throw ValidationError("nearest_alpha: no grid point in window");
  return alpha;
}

const std::vector<ResonanceState>& helium_resonances() {
  static const std::vector<ResonanceState> states = {
      {"2s2-1Se", {-0.79, -0.765}},
      {"2p2-1Se", {-0.6235, -0.6205}},
      {"2s3s-1Se", {-0.594, -0.586}},
  };
  return states;
}

const ResonanceState& find_resonance(const std::string& label) {
  for (const auto& s : helium_resonances()) {
    if (s.label == label || s.label.substr(0, s.label.find('-')) == label) return s;
  }
  throw ValidationError("unknown resonance state '" + label + "' (known: 2s2, 2p2, 2s3s)");
}

void write_scan_csv(std::ostream& out, const StabilizationScan& scan,
                    const std::vector<std::string>& comment) {
  for (const auto& c : comment) out << "# " << c << '\n';
  out << "# omega=" << scan.omega << " Z=" << format_double(scan.nuclear_charge)
      << " energy_ceiling=" << format_double(scan.energy_ceiling)
      << " retained_rank=" << scan.retained_rank << '\n';
  out << "alpha";
  for (std::size_t n = 0; n < scan.curves.size(); ++n) out << ",E_" << n;
  out << '\n';
  for (std::size_t i = 0; i < scan.alphas.size(); ++i) {
    out << format_double(scan.alphas[i]);
    for (const auto& c : scan.curves) out << ',' << format_double(c[i]);
    out << '\n';
  }
}

StabilizationScan read_scan_csv(std::istream& in) {
  StabilizationScan s;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string kv;
      while (meta >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = kv.substr(0, eq);
        const std::string_view val = std::string_view(kv).substr(eq + 1);
        if (key == "omega") s.omega = static_cast<int>(parse_double(val, "scan csv"));
        if (key == "Z") s.nuclear_charge = parse_double(val, "scan csv");
        if (key == "energy_ceiling") s.energy_ceiling = parse_double(val, "scan csv");
        if (key == "retained_rank") {
          s.retained_rank = static_cast<Eigen::Index>(parse_double(val, "scan csv"));
        }
      }
      continue;
    }
    const auto cells = split_commas(line);
    if (!header) {
      if (cells.empty() || cells[0] != "alpha") {
        throw ValidationError("scan csv: header must start with 'alpha'");
      }
      for (std::size_t n = 1; n < cells.size(); ++n) {
        if (cells[n] != "E_" + std::to_string(n - 1)) {
          throw ValidationError("scan csv: unexpected column '" + std::string(cells[n]) + "'");
        }
      }
      s.curves.assign(cells.size() - 1, {});
      header = true;
      continue;
    }
    if (cells.size() != s.curves.size() + 1) throw ValidationError("scan csv: ragged row");
    s.alphas.push_back(parse_double(cells[0], "scan csv"));
    for (std::size_t n = 0; n < s.curves.size(); ++n) {
      s.curves[n].push_back(parse_double(cells[n + 1], "scan csv"));
    }
  }
  if (!header || s.alphas.size() < 3) throw ValidationError("scan csv: no data");
  for (std::size_t i = 1; i < s.alphas.size(); ++i) {
    if (!(s.alphas[i] > s.alphas[i - 1])) throw ValidationError("scan csv: alpha not ascending");
  }
  return s;
}

void write_density_csv(std::ostream& out, const DensityCurve& dc,
                       const std::vector<std::string>& comment) {
  for (const auto& c : comment) out << "# " << c << '\n';
  out << "E,rho\n";
  for (const auto& p : dc.points) {
    out << format_double(p.energy) << ',' << format_double(p.rho) << '\n';
  }
}

}  // namespace hent
