#include <doctest.h>

#include <gpspec/dynamics.hpp>

using namespace gpspec;

namespace {

EvolutionConfig make_cfg(int sigma, double dt, double T) {
  EvolutionConfig c;
  c.sigma = sigma;
  c.dt = dt;
  c.T = T;
  return c;
}

}  // namespace

TEST_CASE("EvolutionConfig validation") {
  CHECK_THROWS_AS(make_cfg(2, 1e-3, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_cfg(0, 0.0, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_cfg(0, 1e-3, -1.0).validate(), std::invalid_argument);
  CHECK_NOTHROW(make_cfg(1, 1e-3, 1.0).validate());
}

TEST_CASE("energy of the 1D ground state") {
  auto b = build_basis(1, 16);
  SpectralState g = ground_state(b);
  // sigma = 0: lambda_0 + 1 = 2
  CHECK(energy(g, 0) == doctest::Approx(2.0).epsilon(1e-14));
  // sigma = 1: 2 + 1/2 int |phi0|^4 = 2 + 1/(2 sqrt(2 pi)) (frozen oracle)
  CHECK(energy(g, 1) == doctest::Approx(2.1994711402007163).epsilon(1e-12));
}

TEST_CASE("zero control, sigma = 0 reduces to the free flow") {
  auto b = build_basis(1, 8);
  std::mt19937_64 rng(53);
  SpectralState psi0 = normalized(random_state(b, rng));
  EvolveResult res = evolve(psi0, ControlSignal::zero(), make_cfg(0, 1e-2, 0.5));
  SpectralState exact = lift(propagate_free(psi0, 0.5), res.traj.states.back().basis);
  CHECK(h1_dist(res.traj.states.back(), exact) < 1e-12);
}

TEST_CASE("strang_step rejects oversized steps") {
  auto b = build_basis(1, 8);
  CHECK_THROWS_AS(strang_step(ground_state(b), ControlSignal::zero(), 0.0, 0.5, 0),
                  std::invalid_argument);
}

TEST_CASE("mass is conserved to round-off over 1000 steps") {
  auto b = build_basis(1, 16);
  ControlSignal u = ControlSignal::piecewise({0.0, 1.0}, {0.5});
  EvolveResult res = evolve(ground_state(b), u, make_cfg(1, 1e-3, 1.0));
  REQUIRE(res.record.mass_series.size() == 1001);
  double worst = 0.0;
  for (double m : res.record.mass_series) worst = std::max(worst, std::abs(m - 1.0));
  CHECK(worst < 1e-12);
}

TEST_CASE("energy is conserved under constant-in-time dynamics") {
  // With u = 0 the Hamiltonian is autonomous, so E is a constant of motion;
  // Strang keeps it within O(dt^2) over the run.
  auto b = build_basis(1, 16);
  std::mt19937_64 rng(59);
  SpectralState psi0 = normalized(random_state(b, rng));
  for (int sigma : {0, 1}) {
    EvolveResult res = evolve(psi0, ControlSignal::zero(), make_cfg(sigma, 1e-3, 1.0));
    const double e0 = res.record.energy_series.front();
    double worst = 0.0;
    for (double e : res.record.energy_series) worst = std::max(worst, std::abs(e - e0));
    CHECK(worst < 1e-6 * std::abs(e0));
  }
}

TEST_CASE("Strang splitting is second order in dt") {
  auto b = build_basis(1, 12);
  SpectralState psi0 = ground_state(b);
  ControlSignal u = ControlSignal::sinusoid(1.0, 1.0, 0.3);
  const double T = 1.0;
  // reference at dt = T/4096
  EvolveResult ref = evolve(psi0, u, make_cfg(1, T / 4096.0, T));
  std::vector<double> errs;
  for (int n : {64, 128, 256}) {
    EvolveResult res = evolve(psi0, u, make_cfg(1, T / n, T));
    errs.push_back(h1_dist(res.traj.states.back(), ref.traj.states.back()));
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    const double order = std::log2(errs[i] / errs[i + 1]);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
}

TEST_CASE("evolve flags non-finite states as NumericalError") {
  auto b = build_basis(1, 8);
  SpectralState bad = ground_state(b);
  bad.coeffs[0] = cplx{std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(evolve(bad, ControlSignal::zero(), make_cfg(0, 1e-2, 0.1)),
                  NumericalError);
}

TEST_CASE("picard_solve agrees with Strang on a short horizon") {
  auto b = build_basis(1, 12);
  SpectralState psi0 = ground_state(b);
  ControlSignal u = ControlSignal::piecewise({0.0, 1.0}, {0.5});
  EvolutionConfig cfg = make_cfg(1, 1e-3, 0.1);
  EvolveResult strang = evolve(psi0, u, cfg);
  cfg.integrator = EvolutionConfig::Integrator::picard;
  PicardReport rep;
  EvolveResult picard = picard_solve(psi0, u, cfg, &rep);
  REQUIRE(picard.traj.times.size() == strang.traj.times.size());
  CHECK(h1_dist(picard.traj.states.back(), strang.traj.states.back()) < 1e-4);
  REQUIRE(!rep.contraction_factors.empty());
  for (double r : rep.contraction_factors) CHECK(r < 0.5);
}

TEST_CASE("Picard contraction factor shrinks with the window") {
  auto b = build_basis(1, 12);
  SpectralState psi0 = ground_state(b);
  ControlSignal u = ControlSignal::piecewise({0.0, 1.0}, {0.5});

  auto first_factor = [&](double window_T) {
    EvolutionConfig cfg = make_cfg(1, window_T / 32.0, window_T);
    PicardReport rep;
    picard_solve(psi0, u, cfg, &rep);
    REQUIRE(!rep.contraction_factors.empty());
    return rep.contraction_factors.front();
  };
  const double c1 = first_factor(0.1);
  const double c2 = first_factor(0.05);
  const double c3 = first_factor(0.025);
  CHECK(c2 < c1);
  CHECK(c3 < c2);
  // halving the window should roughly halve the Lipschitz factor
  CHECK(c2 / c1 < 0.75);
  CHECK(c3 / c2 < 0.75);
}

TEST_CASE("mild_residual is small for the Picard solution and its reference") {
  auto b = build_basis(1, 12);
  SpectralState psi0 = ground_state(b);
  ControlSignal u = ControlSignal::piecewise({0.0, 1.0}, {0.5});
  EvolutionConfig cfg = make_cfg(1, 1e-3, 0.1);
  EvolveResult picard = picard_solve(psi0, u, cfg);
  // the converged fixed point nearly annihilates its own Duhamel defect
  CHECK(mild_residual(picard.traj, u, 1) < 1e-5);
  // flipping the sign of the control leaves a residual of order ||u|| ||K psi||
  ControlSignal flipped = ControlSignal::piecewise({0.0, 1.0}, {-0.5});
  CHECK(mild_residual(picard.traj, flipped, 1) > 1e-2);
}

TEST_CASE("RunRecord bookkeeping") {
  auto b = build_basis(1, 8);
  ControlSignal u = ControlSignal::sinusoid(1.0, 1.0, 0.0);
  EvolutionConfig cfg = make_cfg(0, 1e-2, 0.5);
  cfg.record_w16 = true;
  EvolveResult res = evolve(ground_state(b), u, cfg);
  REQUIRE(res.record.times.size() == 51);
  CHECK(res.record.w16_series.size() == res.record.times.size());
  CHECK(res.record.control_integral.front() == 0.0);
  // int_0^{0.5} |sin(2 pi t)| = 1/pi
  CHECK(res.record.control_integral.back() == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
  // the running |u|-integral is nondecreasing
  for (std::size_t i = 1; i < res.record.control_integral.size(); ++i)
    CHECK(res.record.control_integral[i] >= res.record.control_integral[i - 1]);
  CHECK(res.record.linf_grid.front() > 0.0);
}
