#include <doctest.h>

#include <gpspec/state.hpp>

using namespace gpspec;

namespace {

GridField sample_on_grid(BasisPtr b, const std::function<cplx(const double*)>& f) {
  GridField g{b, std::vector<cplx>(b->n_grid())};
  double x[3];
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    detail::grid_point(*b, i, x);
    g.values[i] = f(x);
  }
  return g;
}

}  // namespace

TEST_CASE("grid samples of h_0 give the unit coefficient vector") {
  auto b = build_basis(1, 8);
  GridField g = sample_on_grid(b, [](const double* x) {
    std::vector<double> h(1);
    hermite_values(1, x[0], h.data());
    return cplx{h[0], 0.0};
  });
  SpectralState s = to_coeffs(g);
  CHECK(std::abs(s.coeffs[0] - 1.0) < 1e-13);
  for (std::size_t k = 1; k < s.coeffs.size(); ++k) CHECK(std::abs(s.coeffs[k]) < 1e-13);
}

TEST_CASE("grid samples of h_0 + h_2 resolve by linearity") {
  auto b = build_basis(1, 8);
  GridField g = sample_on_grid(b, [](const double* x) {
    std::vector<double> h(3);
    hermite_values(3, x[0], h.data());
    return cplx{h[0] + h[2], 0.0};
  });
  SpectralState s = to_coeffs(g);
  CHECK(std::abs(s.coeffs[0] - 1.0) < 1e-13);
  CHECK(std::abs(s.coeffs[2] - 1.0) < 1e-13);
  CHECK(std::abs(s.coeffs[1]) < 1e-13);
  CHECK(std::abs(s.coeffs[3]) < 1e-13);
}

TEST_CASE("transform round trip is the identity on band-limited states") {
  std::mt19937_64 rng(7);
  for (int dim : {1, 2, 3}) {
    auto b = build_basis(dim, dim == 3 ? 6 : 12);
    for (int rep = 0; rep < 5; ++rep) {
      SpectralState s = random_state(b, rng);
      SpectralState rt = to_coeffs(from_coeffs(s));
      double worst = 0.0;
      for (std::size_t k = 0; k < s.coeffs.size(); ++k)
        worst = std::max(worst, std::abs(rt.coeffs[k] - s.coeffs[k]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("Parseval: coefficient mass equals grid quadrature of |f|^2") {
  std::mt19937_64 rng(11);
  auto b = build_basis(2, 10);
  SpectralState s = random_state(b, rng);
  GridField g = from_coeffs(s);
  double grid_mass = 0.0;
  for (std::size_t f = 0; f < g.values.size(); ++f) {
    std::size_t r = f;
    double w = 1.0;
    for (int a = 0; a < 2; ++a) {
      w *= b->weights[r % b->n_nodes];
      r /= b->n_nodes;
    }
    grid_mass += w * std::norm(g.values[f]);
  }
  CHECK(std::abs(grid_mass - mass(s) * mass(s)) < 1e-10);
}

TEST_CASE("free propagator phases") {
  SUBCASE("3D ground state at t = pi flips sign") {
    auto b = build_basis(3, 2);
    SpectralState s = ground_state(b);
    SpectralState p = propagate_free(s, M_PI);
    CHECK(std::abs(p.coeffs[0] - cplx{-1.0, 0.0}) < 1e-13);
  }
  SUBCASE("t = 0 is the identity") {
    auto b = build_basis(1, 8);
    std::mt19937_64 rng(3);
    SpectralState s = random_state(b, rng);
    SpectralState p = propagate_free(s, 0.0);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k)
      CHECK(p.coeffs[k] == s.coeffs[k]);
  }
  SUBCASE("1D modes 0,1 at t = pi map to (-1,-1)") {
    auto b = build_basis(1, 4);
    SpectralState s = zero_state(b);
    s.coeffs[0] = 1.0;
    s.coeffs[1] = 1.0;
    SpectralState p = propagate_free(s, M_PI);
    CHECK(std::abs(p.coeffs[0] - cplx{-1.0, 0.0}) < 1e-13);
    CHECK(std::abs(p.coeffs[1] - cplx{-1.0, 0.0}) < 1e-13);
  }
}

TEST_CASE("free propagator preserves mass and H^s norms") {
  std::mt19937_64 rng(23);
  auto b = build_basis(1, 32);
  for (int rep = 0; rep < 50; ++rep) {
    SpectralState s = random_state(b, rng);
    std::uniform_real_distribution<double> td(-5.0, 5.0);
    SpectralState p = propagate_free(s, td(rng));
    CHECK(std::abs(mass(p) - mass(s)) < 1e-13);
    for (double reg : {0.5, 1.0, 2.0})
      CHECK(std::abs(sobolev_norm(p, reg) - sobolev_norm(s, reg)) <
            1e-13 * sobolev_norm(s, reg));
  }
}

TEST_CASE("sobolev_norm examples") {
  auto b3 = build_basis(3, 2);
  CHECK(sobolev_norm(ground_state(b3), 1.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  auto b1 = build_basis(1, 8);
  SpectralState s = zero_state(b1);
  s.coeffs[4] = 1.0;  // weight 2k+1 = 9
  CHECK(sobolev_norm(s, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sobolev_norm(zero_state(b1), 1.0) == 0.0);
  CHECK(sobolev_norm(s, 0.0) == doctest::Approx(mass(s)).epsilon(1e-14));
}

TEST_CASE("lebesgue_sobolev_norm") {
  SUBCASE("s=0, p=2 agrees with the mass") {
    std::mt19937_64 rng(5);
    auto b = build_basis(1, 16);
    SpectralState s = random_state(b, rng);
    CHECK(std::abs(lebesgue_sobolev_norm(s, 0, 2.0) - sobolev_norm(s, 0.0)) < 1e-10);
  }
  SUBCASE("1D ground state, s=0, p=2 is 1") {
    auto b = build_basis(1, 8);
    CHECK(lebesgue_sobolev_norm(ground_state(b), 0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("1D ground state, s=1, p=2 closed form") {
    // ||phi0'||_2 + ||<x> phi0||_2 = sqrt(1/2) + sqrt(3/2)
    auto b = build_basis(1, 8);
    CHECK(lebesgue_sobolev_norm(ground_state(b), 1, 2.0) ==
          doctest::Approx(1.9318516525781366).epsilon(1e-10));
  }
  SUBCASE("3D ground state, s=1, p=6 against the refined oracle") {
    // || |x| phi0 ||_{L^6} + || <x> phi0 ||_{L^6}, radial Gaussian integrals
    auto b = build_basis(3, 16);
    CHECK(std::abs(lebesgue_sobolev_norm(ground_state(b), 1, 6.0) -
                   0.9254364132116159) < 1e-6);
  }
}

TEST_CASE("norm equivalence: W^{1,2} vs H^1 stays in a fixed band") {
  std::mt19937_64 rng(17);
  auto b = build_basis(1, 24);
  double lo = 1e30, hi = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    SpectralState s = random_state(b, rng);
    const double ratio = lebesgue_sobolev_norm(s, 1, 2.0) / sobolev_norm(s, 1.0);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  // (||grad f|| + ||<x>f||)/sqrt(||grad f||^2 + ||x f||^2 ) in [1, 2] analytically
  CHECK(lo > 0.99);
  CHECK(hi < 2.01);
  MESSAGE("empirical equivalence band: [", lo, ", ", hi, "]");
}

TEST_CASE("point evaluation matches the grid synthesis") {
  std::mt19937_64 rng(29);
  auto b = build_basis(2, 8);
  SpectralState s = random_state(b, rng);
  GridField g = from_coeffs(s);
  double x[3];
  for (std::size_t i : {std::size_t(0), std::size_t(37), g.values.size() - 1}) {
    detail::grid_point(*b, i, x);
    CHECK(std::abs(evaluate(s, x) - g.values[i]) < 1e-12);
  }
}

TEST_CASE("basis mismatch is rejected") {
  auto a = build_basis(1, 8);
  auto b = build_basis(1, 16);
  SpectralState sa = ground_state(a), sb = ground_state(b);
  CHECK_THROWS_AS(h1_dist(sa, sb), std::invalid_argument);
}

TEST_CASE("lift and truncate are inverse on the band limit") {
  std::mt19937_64 rng(31);
  auto small = build_basis(1, 8);
  auto big = collocation_basis(1, 16);
  SpectralState s = random_state(small, rng);
  SpectralState back = truncate(lift(s, big), small);
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) CHECK(back.coeffs[k] == s.coeffs[k]);
  CHECK(std::abs(mass(lift(s, big)) - mass(s)) < 1e-15);
}
