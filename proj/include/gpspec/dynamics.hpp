#pragma once

// Time evolution of the controlled equation
//   i dpsi/dt + H psi = u(t) K(x) psi - sigma |psi|^2 psi
// by Strang splitting and by Picard iteration on the mild (Duhamel) form.
//
// Integrators run in the square collocation space (as many modes as nodes):
// there the discrete transform is exactly unitary, so every split factor is a
// pointwise phase or a diagonal unitary and mass is conserved to round-off.

#include "control.hpp"
#include "potential.hpp"

namespace gpspec {

struct EvolutionConfig {
  int sigma = 0;  // nonlinearity switch, 0 or 1
  double dt = 1e-3;
  double T = 1.0;
  enum class Integrator { strang, picard } integrator = Integrator::strang;
  double picard_tol = 1e-10;
  int picard_max_iter = 60;
  bool record_w16 = false;

  void validate() const {
    if (sigma != 0 && sigma != 1)
      throw std::invalid_argument("EvolutionConfig: sigma must be 0 or 1");
    if (!(dt > 0.0)) throw std::invalid_argument("EvolutionConfig: dt must be > 0");
    if (!(T > 0.0)) throw std::invalid_argument("EvolutionConfig: T must be > 0");
    if (!(picard_tol > 0.0))
      throw std::invalid_argument("EvolutionConfig: picard_tol must be > 0");
    if (picard_max_iter < 1)
      throw std::invalid_argument("EvolutionConfig: picard_max_iter must be >= 1");
  }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralState> states;
};

struct RunRecord {
  std::vector<double> times;
  std::vector<double> mass_series;
  std::vector<double> energy_series;
  std::vector<double> h1_series;
  std::vector<double> linf_grid;
  std::vector<double> control_integral;  // int_0^t |u|
  std::vector<double> w16_series;        // optional, empty unless recorded
};

struct EvolveResult {
  Trajectory traj;
  RunRecord record;
};

struct PicardReport {
  std::vector<double> window_starts;
  std::vector<double> window_lengths;
  std::vector<double> contraction_factors;  // first measured ratio per window
  std::vector<int> iterations;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PicardError : public std::runtime_error {
 public:
  PicardError(const std::string& msg, double ratio, int iters)
      : std::runtime_error(msg), lipschitz_ratio(ratio), iterations(iters) {}
  double lipschitz_ratio;
  int iterations;
};

// E = int( psi-bar H psi + |psi|^2 + sigma/2 |psi|^4 ) dx
//   = sum lambda_k |a_k|^2 + sum |a_k|^2 + sigma/2 * quadrature(|psi|^4).
inline double energy(const SpectralState& s, int sigma) {
  const HermiteBasis& b = *s.basis;
  double e = 0.0;
  for (std::size_t f = 0; f < s.coeffs.size(); ++f)
    e += (b.eigs[f] + 1.0) * std::norm(s.coeffs[f]);
  if (sigma != 0) {
    GridField g = from_coeffs(s);
    std::vector<double> q(g.values.size());
    for (std::size_t f = 0; f < q.size(); ++f) q[f] = std::norm(g.values[f]);
    double quart = 0.0;
    const int n = b.n_nodes;
    for (std::size_t f = 0; f < q.size(); ++f) {
      std::size_t r = f;
      double w = 1.0;
      for (int a = 0; a < b.dim; ++a) {
        w *= b.weights[r % n];
        r /= n;
      }
      quart += w * q[f] * q[f];
    }
    e += 0.5 * sigma * quart;
  }
  return e;
}

namespace detail {

inline void apply_potential_phase(GridField& g, const std::vector<double>& Kgrid,
                                  double ubar, double half_dt, int sigma) {
  for (std::size_t f = 0; f < g.values.size(); ++f) {
    const double v = ubar * Kgrid[f] - sigma * std::norm(g.values[f]);
    g.values[f] *= std::polar(1.0, -half_dt * v);
  }
}

inline BasisPtr evolution_basis(const SpectralState& psi0) {
  const HermiteBasis& b = *psi0.basis;
  if (b.n_modes == b.n_nodes) return psi0.basis;
  return collocation_basis(b.dim, b.n_nodes);
}

}  // namespace detail

// One Strang step: half potential phase, full free flight, half phase. The
// |psi|^2 factor inside each phase is the frozen grid value at that substep,
// which keeps the factor exactly unimodular.
inline SpectralState strang_step(const SpectralState& state, const ControlSignal& u,
                                 double t, double dt, int sigma,
                                 const std::vector<double>* Kgrid_cache = nullptr) {
  if (!(dt > 0.0) || dt > 0.1)
    throw std::invalid_argument("strang_step: require 0 < dt <= 0.1");
  std::vector<double> Kgrid_local;
  const std::vector<double>* Kgrid = Kgrid_cache;
  if (!Kgrid) {
    Kgrid_local = potential_K_grid(*state.basis);
    Kgrid = &Kgrid_local;
  }
  const double ubar = cell_average(u, t, t + dt);
  GridField g = from_coeffs(state);
  detail::apply_potential_phase(g, *Kgrid, ubar, 0.5 * dt, sigma);
  SpectralState c = to_coeffs(g);
  c = propagate_free(c, dt);
  g = from_coeffs(c);
  detail::apply_potential_phase(g, *Kgrid, ubar, 0.5 * dt, sigma);
  return to_coeffs(g);
}

namespace detail {

inline void record_snapshot(RunRecord& rec, const SpectralState& s, double t,
                            const ControlSignal& u, int sigma, bool with_w16,
                            double prev_abs_int) {
  rec.times.push_back(t);
  rec.mass_series.push_back(mass(s));
  rec.energy_series.push_back(energy(s, sigma));
  rec.h1_series.push_back(h1_norm(s));
  GridField g = from_coeffs(s);
  double linf = 0.0;
  for (const cplx& v : g.values) linf = std::max(linf, std::abs(v));
  rec.linf_grid.push_back(linf);
  rec.control_integral.push_back(prev_abs_int);
  if (with_w16) rec.w16_series.push_back(lebesgue_sobolev_norm(s, 1, 6.0));
  (void)u;
}

}  // namespace detail

// Strang-splitting production integrator.
inline EvolveResult evolve(const SpectralState& psi0, const ControlSignal& u,
                           const EvolutionConfig& cfg) {
  cfg.validate();
  require_domain(u, 0.0, cfg.T);
  BasisPtr eb = detail::evolution_basis(psi0);
  SpectralState psi = (eb == psi0.basis) ? psi0 : lift(psi0, eb);
  const long long n_steps = std::max(1LL, (long long)std::llround(cfg.T / cfg.dt));
  const double dt = cfg.T / double(n_steps);
  const std::vector<double> Kgrid = potential_K_grid(*eb);

  EvolveResult out;
  out.traj.times.reserve(n_steps + 1);
  out.traj.states.reserve(n_steps + 1);
  double abs_int = 0.0;
  out.traj.times.push_back(0.0);
  out.traj.states.push_back(psi);
  detail::record_snapshot(out.record, psi, 0.0, u, cfg.sigma, cfg.record_w16, abs_int);

  for (long long step = 0; step < n_steps; ++step) {
    const double t = step * dt;
    psi = strang_step(psi, u, t, dt, cfg.sigma, &Kgrid);
    const double m = mass(psi);
    if (!std::isfinite(m))
      throw NumericalError("evolve: non-finite state at t = " + std::to_string(t + dt));
    abs_int += abs_integral(u, t, t + dt);
    out.traj.times.push_back((step + 1) * dt);
    out.traj.states.push_back(psi);
    detail::record_snapshot(out.record, psi, (step + 1) * dt, u, cfg.sigma,
                            cfg.record_w16, abs_int);
  }
  return out;
}

// Picard/Duhamel mild-solution solver. Advances window by window; the window
// length (in whole steps) is halved until the measured iterate contraction
// factor drops below 0.5, mirroring the local-to-global fixed-point argument.
inline EvolveResult picard_solve(const SpectralState& psi0, const ControlSignal& u,
                                 const EvolutionConfig& cfg,
                                 PicardReport* report = nullptr) {
  cfg.validate();
  require_domain(u, 0.0, cfg.T);
  BasisPtr eb = detail::evolution_basis(psi0);
  SpectralState start = (eb == psi0.basis) ? psi0 : lift(psi0, eb);
  const long long n_steps = std::max(1LL, (long long)std::llround(cfg.T / cfg.dt));
  const double dt = cfg.T / double(n_steps);
  const std::vector<double> Kgrid = potential_K_grid(*eb);
  const std::size_t nc = eb->n_coeffs();

  EvolveResult out;
  out.traj.times.push_back(0.0);
  out.traj.states.push_back(start);
  double abs_int = 0.0;
  detail::record_snapshot(out.record, start, 0.0, u, cfg.sigma, cfg.record_w16, abs_int);

  // -i u K psi + i sigma |psi|^2 psi, in coefficients
  auto duhamel_density = [&](const SpectralState& s, double ut) {
    GridField g = from_coeffs(s);
    GridField mixed = g;
    for (std::size_t f = 0; f < g.values.size(); ++f)
      mixed.values[f] =
          cplx{0.0, -1.0} * ut * Kgrid[f] * g.values[f] +
          cplx{0.0, double(cfg.sigma)} * std::norm(g.values[f]) * g.values[f];
    return to_coeffs(mixed);
  };

  long long i0 = 0;
  long long window = std::max(1LL, (long long)std::llround(0.1 / dt));
  while (i0 < n_steps) {
    const long long m = std::min(window, n_steps - i0);
    const double t0 = i0 * dt;
    const SpectralState& anchor = out.traj.states.back();

    // initial guess: free flow from the window anchor
    std::vector<SpectralState> psi(m + 1);
    for (long long j = 0; j <= m; ++j) psi[j] = propagate_free(anchor, j * dt);

    double prev_diff = -1.0;
    double first_ratio = -1.0;
    int iters = 0;
    bool converged = false;
    std::vector<SpectralState> next(m + 1);
    while (iters < cfg.picard_max_iter) {
      ++iters;
      // G_j = e^{-i tau_j H} f(psi_j), prefix-summed for the trapezoid rule
      std::vector<cplx> prefix(nc, cplx{0.0, 0.0});
      std::vector<cplx> G0(nc), Gj(nc);
      double diff = 0.0;
      for (long long j = 0; j <= m; ++j) {
        const double tj = t0 + j * dt;
        SpectralState f = duhamel_density(psi[j], eval(u, tj));
        for (std::size_t k = 0; k < nc; ++k) {
          Gj[k] = std::polar(1.0, -(tj - t0) * eb->eigs[k]) * f.coeffs[k];
          prefix[k] += Gj[k];
        }
        if (j == 0) G0 = Gj;
        SpectralState cand = zero_state(eb);
        for (std::size_t k = 0; k < nc; ++k) {
          const cplx integral_k = dt * (prefix[k] - 0.5 * (G0[k] + Gj[k]));
          cand.coeffs[k] = std::polar(1.0, (tj - t0) * eb->eigs[k]) *
                           (anchor.coeffs[k] + integral_k);
        }
        diff = std::max(diff, h1_dist(cand, psi[j]));
        next[j] = std::move(cand);
      }
      psi.swap(next);
      if (prev_diff > 0.0 && first_ratio < 0.0) first_ratio = diff / prev_diff;
      if (diff < cfg.picard_tol) {
        converged = true;
        break;
      }
      prev_diff = diff;
    }

    if (first_ratio >= 0.5 || !converged) {
      if (m > 1) {
        window = std::max(1LL, m / 2);
        continue;  // redo this window, shorter
      }
      throw PicardError("picard_solve: no contraction on a single step (ratio " +
                            std::to_string(first_ratio) + " after " +
                            std::to_string(iters) + " iterations)",
                        first_ratio, iters);
    }

    if (report) {
      report->window_starts.push_back(t0);
      report->window_lengths.push_back(m * dt);
      report->contraction_factors.push_back(first_ratio);
      report->iterations.push_back(iters);
    }
    for (long long j = 1; j <= m; ++j) {
      const double t = t0 + j * dt;
      const double mm = mass(psi[j]);
      if (!std::isfinite(mm))
        throw NumericalError("picard_solve: non-finite state at t = " + std::to_string(t));
      abs_int += abs_integral(u, t - dt, t);
      out.traj.times.push_back(t);
      out.traj.states.push_back(psi[j]);
      detail::record_snapshot(out.record, psi[j], t, u, cfg.sigma, cfg.record_w16,
                              abs_int);
    }
    i0 += m;
  }
  return out;
}

// Discrete L^inf_T H^1 defect of the trajectory against its own Duhamel
// right-hand side (trapezoid rule on the sample grid).
inline double mild_residual(const Trajectory& traj, const ControlSignal& u, int sigma) {
  if (traj.states.size() < 2) return 0.0;
  BasisPtr eb = traj.states.front().basis;
  const std::size_t nc = eb->n_coeffs();
  const double dt = traj.times[1] - traj.times[0];
  const std::vector<double> Kgrid = potential_K_grid(*eb);

  std::vector<cplx> prefix(nc, cplx{0.0, 0.0}), G0(nc), Gj(nc);
  double worst = 0.0;
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    const double tj = traj.times[j];
    GridField g = from_coeffs(traj.states[j]);
    const double ut = eval(u, tj);
    for (std::size_t f = 0; f < g.values.size(); ++f)
      g.values[f] = cplx{0.0, -1.0} * ut * Kgrid[f] * g.values[f] +
                    cplx{0.0, double(sigma)} * std::norm(g.values[f]) * g.values[f];
    SpectralState fc = to_coeffs(g);
    for (std::size_t k = 0; k < nc; ++k) {
      Gj[k] = std::polar(1.0, -tj * eb->eigs[k]) * fc.coeffs[k];
      prefix[k] += Gj[k];
    }
    if (j == 0) G0 = Gj;
    double h1def = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
      const cplx integral_k = dt * (prefix[k] - 0.5 * (G0[k] + Gj[k]));
      const cplx rhs = std::polar(1.0, tj * eb->eigs[k]) *
                       (traj.states.front().coeffs[k] + integral_k);
      h1def += eb->eigs[k] * std::norm(traj.states[j].coeffs[k] - rhs);
    }
    worst = std::max(worst, std::sqrt(h1def));
  }
  return worst;
}

}  // namespace gpspec
