#include <doctest.h>

#include <gpspec/control.hpp>

using namespace gpspec;

TEST_CASE("piecewise-constant evaluation and domain") {
  ControlSignal u = ControlSignal::piecewise({0.0, 0.25, 1.0}, {2.0, -1.0});
  CHECK(eval(u, 0.0) == 2.0);
  CHECK(eval(u, 0.2) == 2.0);
  CHECK(eval(u, 0.25) == -1.0);  // right-continuous
  CHECK(eval(u, 0.99) == -1.0);
  CHECK(eval(u, 1.0) == -1.0);
  CHECK_THROWS_AS(eval(u, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval(u, 1.5), std::domain_error);
}

TEST_CASE("piecewise constructor validation") {
  CHECK_THROWS_AS(ControlSignal::piecewise({0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ControlSignal::piecewise({0.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(ControlSignal::piecewise({0.0, 0.0, 1.0}, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("integrals are exact") {
  SUBCASE("piecewise constant") {
    ControlSignal u = ControlSignal::piecewise({0.0, 0.25, 1.0}, {2.0, -1.0});
    CHECK(integral(u, 0.0, 1.0) == doctest::Approx(2.0 * 0.25 - 0.75).epsilon(1e-15));
    CHECK(integral(u, 0.1, 0.3) ==
          doctest::Approx(2.0 * 0.15 - 1.0 * 0.05).epsilon(1e-14));
    CHECK(integral(u, 0.3, 0.1) ==
          doctest::Approx(-(2.0 * 0.15 - 1.0 * 0.05)).epsilon(1e-14));
  }
  SUBCASE("sinusoid over whole periods vanishes") {
    ControlSignal u = ControlSignal::sinusoid(3.0, 2.0, 0.0);
    CHECK(std::abs(integral(u, 0.0, 1.0)) < 1e-14);
    // quarter period of sin(2 pi t): int_0^{1/4} sin = (1 - cos(pi/2)) / (2 pi)
    ControlSignal v = ControlSignal::sinusoid(1.0, 1.0, 0.0);
    CHECK(integral(v, 0.0, 0.25) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
  }
  SUBCASE("sum is linear") {
    ControlSignal u = ControlSignal::sum(
        {ControlSignal::piecewise({0.0, 1.0}, {1.5}), ControlSignal::sinusoid(1.0, 1.0, 0.0)});
    CHECK(integral(u, 0.0, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  }
}

TEST_CASE("cell_average of a constant control is that constant") {
  ControlSignal u = ControlSignal::piecewise({0.0, 1.0}, {0.7});
  CHECK(cell_average(u, 0.2, 0.3) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(cell_average(u, 0.5, 0.5) == 0.7);
}

TEST_CASE("lr_norm closed forms") {
  SUBCASE("piecewise constant") {
    ControlSignal u = ControlSignal::piecewise({0.0, 0.5, 1.0}, {3.0, -4.0});
    // L^2: sqrt(9*0.5 + 16*0.5) = sqrt(12.5)
    CHECK(lr_norm(u, 2.0, 1.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
    // L^1: 1.5 + 2.0
    CHECK(lr_norm(u, 1.0, 1.0) == doctest::Approx(3.5).epsilon(1e-14));
    // truncation at T = 0.5 only sees the first cell
    CHECK(lr_norm(u, 2.0, 0.5) == doctest::Approx(3.0 * std::sqrt(0.5)).epsilon(1e-14));
  }
  SUBCASE("unit sinusoid over whole periods") {
    ControlSignal u = ControlSignal::sinusoid(2.0, 3.0, 0.0);
    // ||a sin||_{L^2(0,1)} = a / sqrt(2) over whole periods
    CHECK(lr_norm(u, 2.0, 1.0) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-13));
    // ||a sin||_{L^1(0,1)} = a * 2/pi per unit time over whole periods
    CHECK(lr_norm(u, 1.0, 1.0) == doctest::Approx(2.0 * 2.0 / M_PI).epsilon(1e-13));
    // ||a sin||_{L^4}^4 = a^4 * 3/8 over whole periods
    CHECK(lr_norm(u, 4.0, 1.0) ==
          doctest::Approx(2.0 * std::pow(3.0 / 8.0, 0.25)).epsilon(1e-10));
  }
  SUBCASE("sum via adaptive quadrature matches a manual value") {
    // |1 + sin(2 pi t)| = 1 + sin(2 pi t) >= 0, so L^1 = 1 exactly.
    ControlSignal u = ControlSignal::sum(
        {ControlSignal::piecewise({0.0, 1.0}, {1.0}), ControlSignal::sinusoid(1.0, 1.0, 0.0)});
    CHECK(lr_norm(u, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
  }
  CHECK_THROWS_AS(lr_norm(ControlSignal::zero(), 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("abs_integral handles sign changes exactly") {
  ControlSignal u = ControlSignal::sinusoid(1.0, 1.0, 0.0);
  // int_0^1 |sin(2 pi t)| = 2/pi
  CHECK(abs_integral(u, 0.0, 1.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
  // subinterval straddling the zero at t = 1/2
  const double manual = (std::cos(2.0 * M_PI * 0.4) - std::cos(M_PI)) / (2.0 * M_PI) +
                        (std::cos(M_PI) - std::cos(2.0 * M_PI * 0.6)) / (2.0 * M_PI) * -1.0;
  CHECK(abs_integral(u, 0.4, 0.6) == doctest::Approx(std::abs(manual)).epsilon(1e-12));
  ControlSignal pc = ControlSignal::piecewise({0.0, 0.5, 1.0}, {1.0, -1.0});
  CHECK(abs_integral(pc, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weak_family oscillations average out against smooth windows") {
  ControlSignal base = ControlSignal::piecewise({0.0, 1.0}, {0.5});
  double prev = 1e30;
  for (int n : {4, 16, 64, 256}) {
    ControlSignal un = weak_family(base, n);
    // pairing against the indicator of [0,1]: |int (u_n - u)| = O(1/n)
    const double pairing = std::abs(integral(un, 0.0, 1.0) - integral(base, 0.0, 1.0));
    CHECK(pairing <= prev + 1e-15);
    CHECK(pairing < 1.0 / n);
    prev = pairing;
  }
  // ... while the L^2 distance to the base does not shrink
  ControlSignal u64 = weak_family(base, 64);
  ControlSignal diff = ControlSignal::sinusoid(1.0, 64.0, 0.0);
  CHECK(lr_norm(diff, 2.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(weak_family(base, 0), std::invalid_argument);
}

TEST_CASE("JSON round trips") {
  std::vector<ControlSignal> cases = {
      ControlSignal::zero(),
      ControlSignal::piecewise({0.0, 0.3, 1.0}, {1.0, -2.0}),
      ControlSignal::sinusoid(0.5, 2.0, 0.1),
      ControlSignal::sum({ControlSignal::sinusoid(1.0, 1.0, 0.0),
                          ControlSignal::piecewise({0.0, 1.0}, {2.0})})};
  for (const auto& u : cases) {
    ControlSignal v = control_from_json(to_json(u));
    for (double t : {0.0, 0.17, 0.5, 0.99}) CHECK(eval(v, t) == eval(u, t));
  }
}

TEST_CASE("JSON validation rejects malformed descriptors") {
  using nlohmann::json;
  CHECK_THROWS_AS(control_from_json(json{{"amplitude", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(control_from_json(json{{"kind", "triangle"}}), std::invalid_argument);
  CHECK_THROWS_AS(control_from_json(json{{"kind", "zero"}, {"amplitude", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      control_from_json(json{{"kind", "sinusoid"}, {"amplitude", 1.0}, {"frequency", 1.0},
                             {"phase", 0.0}, {"extra", 1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(control_from_json(json{{"kind", "piecewise_constant"},
                                         {"breakpoints", {0.0, 1.0}},
                                         {"values", {1.0, 2.0}}}),
                  std::invalid_argument);
}
