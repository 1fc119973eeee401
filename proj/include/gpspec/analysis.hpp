#pragma once

// Diagnostics on trajectories: Strichartz-type norms, the weak-convergence
// obstruction experiment, and attainable-set covering probes.

#include <thread>

#include "dynamics.hpp"

namespace gpspec {

inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& body) {
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct X1TNorm {
  double linf_h1 = 0.0;
  double l2_w16 = 0.0;
  double total() const { return linf_h1 + l2_w16; }
};

// L^inf_T H^1 and L^2_T W^{1,6} components of the X^1_T norm.
inline X1TNorm x1t_norm(const Trajectory& traj) {
  X1TNorm out;
  if (traj.states.empty()) return out;
  std::vector<double> w16(traj.states.size());
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    out.linf_h1 = std::max(out.linf_h1, h1_norm(traj.states[j]));
    w16[j] = lebesgue_sobolev_norm(traj.states[j], 1, 6.0);
  }
  double acc = 0.0;  // trapezoid of w16^2
  for (std::size_t j = 0; j + 1 < traj.states.size(); ++j)
    acc += 0.5 * (traj.times[j + 1] - traj.times[j]) *
           (w16[j] * w16[j] + w16[j + 1] * w16[j + 1]);
  out.l2_w16 = std::sqrt(acc);
  return out;
}

// eps_n = || int_0^t (u_n - u)(tau) e^{i(t-tau)H} (K psi(tau)) dtau ||_{Linf_T H^1},
// with K psi snapshots supplied (unit-test hook: pass zeros to kill the term).
inline double epsilon_n(const Trajectory& psi_traj,
                        const std::vector<SpectralState>& K_psi,
                        const ControlSignal& u, const ControlSignal& u_n) {
  if (psi_traj.states.size() < 2) return 0.0;
  BasisPtr eb = psi_traj.states.front().basis;
  const std::size_t nc = eb->n_coeffs();
  const double dt = psi_traj.times[1] - psi_traj.times[0];
  // e^{i t H} is an H^1 isometry, so the sup over t reduces to the H^1 norm of
  // the rotated prefix sums.
  std::vector<cplx> prefix(nc, cplx{0.0, 0.0}), G0(nc), Gj(nc);
  double worst = 0.0;
  for (std::size_t j = 0; j < psi_traj.states.size(); ++j) {
    const double tj = psi_traj.times[j];
    const double du = eval(u_n, tj) - eval(u, tj);
    for (std::size_t k = 0; k < nc; ++k) {
      Gj[k] = du * std::polar(1.0, -tj * eb->eigs[k]) * K_psi[j].coeffs[k];
      prefix[k] += Gj[k];
    }
    if (j == 0) G0 = Gj;
    double h1int = 0.0;
    for (std::size_t k = 0; k < nc; ++k)
      h1int += eb->eigs[k] * std::norm(dt * (prefix[k] - 0.5 * (G0[k] + Gj[k])));
    worst = std::max(worst, std::sqrt(h1int));
  }
  return worst;
}

inline double epsilon_n(const Trajectory& psi_traj, const ControlSignal& u,
                        const ControlSignal& u_n) {
  std::vector<SpectralState> K_psi;
  K_psi.reserve(psi_traj.states.size());
  for (const auto& s : psi_traj.states) K_psi.push_back(multiply_K(s));
  return epsilon_n(psi_traj, K_psi, u, u_n);
}

struct WeakLimitRow {
  int n = 0;
  double eps_n = 0.0;
  double zn_linf_h1 = 0.0;
  double ratio = 0.0;  // zn / eps_n
};

// For each n: evolve with u_n = u + sin(2 pi n t), measure sup_t ||psi - psi_n||_{H^1},
// eps_n, and their ratio. Duplicate n values are processed once.
inline std::vector<WeakLimitRow> weak_limit_experiment(const SpectralState& psi0,
                                                       const ControlSignal& u,
                                                       std::vector<int> n_list,
                                                       const EvolutionConfig& cfg,
                                                       int threads = 1) {
  std::vector<int> ns;
  for (int n : n_list)
    if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
  std::vector<WeakLimitRow> rows(ns.size());
  if (ns.empty()) return rows;

  EvolveResult base = evolve(psi0, u, cfg);
  std::vector<SpectralState> K_psi;
  K_psi.reserve(base.traj.states.size());
  for (const auto& s : base.traj.states) K_psi.push_back(multiply_K(s));

  parallel_for(ns.size(), threads, [&](std::size_t i) {
    const int n = ns[i];
    const ControlSignal un = weak_family(u, n);
    EvolveResult pert = evolve(psi0, un, cfg);
    double zn = 0.0;
    for (std::size_t j = 0; j < base.traj.states.size(); ++j)
      zn = std::max(zn, h1_dist(base.traj.states[j], pert.traj.states[j]));
    const double eps = epsilon_n(base.traj, K_psi, u, un);
    rows[i] = WeakLimitRow{n, eps, zn, eps > 0.0 ? zn / eps : 0.0};
  });
  return rows;
}

struct ReachSample {
  nlohmann::json control;
  double t = 0.0;
  SpectralState terminal;
  double r = 2.0;
  double lr = 0.0;  // lr_norm(u, r) over [0, t]
  double h1 = 0.0;
  bool ok = false;
  std::string error;
};

// Terminal states for every (control, horizon) pair. Per-sample integrator
// failures are recorded, not fatal.
inline std::vector<ReachSample> reach_sample(const SpectralState& psi0,
                                             const std::vector<ControlSignal>& controls,
                                             const std::vector<double>& horizons,
                                             const EvolutionConfig& cfg, double r,
                                             int threads = 1) {
  std::vector<ReachSample> samples(controls.size() * horizons.size());
  parallel_for(samples.size(), threads, [&](std::size_t i) {
    const ControlSignal& u = controls[i / horizons.size()];
    const double t = horizons[i % horizons.size()];
    ReachSample& out = samples[i];
    out.control = to_json(u);
    out.t = t;
    out.r = r;
    try {
      out.lr = lr_norm(u, r, std::max(t, 0.0));
      if (t <= 0.0) {
        out.terminal = psi0;
      } else {
        EvolutionConfig c = cfg;
        c.T = t;
        out.terminal = evolve(psi0, u, c).traj.states.back();
      }
      out.h1 = h1_norm(out.terminal);
      out.ok = true;
    } catch (const std::exception& e) {
      out.error = e.what();
    }
  });
  return samples;
}

// Size of a greedy eps-net in H^1 distance: walk the samples, open a new
// center whenever a point is not covered.
inline int covering_number(const std::vector<SpectralState>& samples, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("covering_number: eps must be > 0");
  std::vector<const SpectralState*> centers;
  for (const auto& s : samples) {
    bool covered = false;
    for (const SpectralState* c : centers)
      if (h1_dist(s, *c) <= eps) {
        covered = true;
        break;
      }
    if (!covered) centers.push_back(&s);
  }
  return int(centers.size());
}

// Uniform random state on the H^1 sphere of the given radius (comparison
// population for the covering probe).
inline SpectralState random_h1_sphere_state(BasisPtr basis, double radius,
                                            std::mt19937_64& rng) {
  SpectralState s = zero_state(basis);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t f = 0; f < s.coeffs.size(); ++f)
    s.coeffs[f] = cplx{gauss(rng), gauss(rng)};
  const double h1 = h1_norm(s);
  for (cplx& c : s.coeffs) c *= radius / h1;
  return s;
}

}  // namespace gpspec
