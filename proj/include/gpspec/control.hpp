#pragma once

// Control signals u : [0,T] -> R with exact integrals and L^r norms.

#include <json.hpp>

#include "quadrature.hpp"

namespace gpspec {

struct ControlSignal {
  enum class Kind { zero, piecewise_constant, sinusoid, sum };
  Kind kind = Kind::zero;

  // piecewise_constant: values[i] on [breakpoints[i], breakpoints[i+1]),
  // right-continuous at breakpoints; the domain is [front, back].
  std::vector<double> breakpoints;
  std::vector<double> values;

  // sinusoid: amplitude * sin(2 pi frequency t + phase)
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  std::vector<ControlSignal> terms;  // sum

  static ControlSignal zero() { return {}; }
  static ControlSignal piecewise(std::vector<double> bp, std::vector<double> v) {
    if (bp.size() < 2 || v.size() + 1 != bp.size())
      throw std::invalid_argument("piecewise_constant: need n+1 breakpoints for n values");
    for (std::size_t i = 0; i + 1 < bp.size(); ++i)
      if (!(bp[i] < bp[i + 1]))
        throw std::invalid_argument("piecewise_constant: breakpoints must increase");
    ControlSignal u;
    u.kind = Kind::piecewise_constant;
    u.breakpoints = std::move(bp);
    u.values = std::move(v);
    return u;
  }
  static ControlSignal sinusoid(double a, double f, double ph) {
    ControlSignal u;
    u.kind = Kind::sinusoid;
    u.amplitude = a;
    u.frequency = f;
    u.phase = ph;
    return u;
  }
  static ControlSignal sum(std::vector<ControlSignal> ts) {
    ControlSignal u;
    u.kind = Kind::sum;
    u.terms = std::move(ts);
    return u;
  }
};

inline double eval(const ControlSignal& u, double t) {
  switch (u.kind) {
    case ControlSignal::Kind::zero:
      return 0.0;
    case ControlSignal::Kind::sinusoid:
      return u.amplitude * std::sin(2.0 * M_PI * u.frequency * t + u.phase);
    case ControlSignal::Kind::sum: {
      double v = 0.0;
      for (const auto& term : u.terms) v += eval(term, t);
      return v;
    }
    case ControlSignal::Kind::piecewise_constant: {
      if (t < u.breakpoints.front() || t > u.breakpoints.back())
        throw std::domain_error("ControlSignal: t outside domain");
      if (t == u.breakpoints.back()) return u.values.back();
      std::size_t i = 0;
      while (i + 2 < u.breakpoints.size() && t >= u.breakpoints[i + 1]) ++i;
      return u.values[i];
    }
  }
  return 0.0;
}

// Throws unless u is defined on all of [a, b] (piecewise-constant signals
// carry a finite domain; the closed-form kinds are defined everywhere).
inline void require_domain(const ControlSignal& u, double a, double b) {
  switch (u.kind) {
    case ControlSignal::Kind::piecewise_constant:
      if (a < u.breakpoints.front() || b > u.breakpoints.back())
        throw std::domain_error("ControlSignal: [" + std::to_string(a) + ", " +
                                std::to_string(b) + "] outside the control domain");
      return;
    case ControlSignal::Kind::sum:
      for (const auto& term : u.terms) require_domain(term, a, b);
      return;
    default:
      return;
  }
}

// Exact int_a^b u(t) dt.
inline double integral(const ControlSignal& u, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) return -integral(u, b, a);
  switch (u.kind) {
    case ControlSignal::Kind::zero:
      return 0.0;
    case ControlSignal::Kind::sinusoid: {
      const double om = 2.0 * M_PI * u.frequency;
      if (om == 0.0) return u.amplitude * std::sin(u.phase) * (b - a);
      return u.amplitude * (std::cos(om * a + u.phase) - std::cos(om * b + u.phase)) / om;
    }
    case ControlSignal::Kind::sum: {
      double v = 0.0;
      for (const auto& term : u.terms) v += integral(term, a, b);
      return v;
    }
    case ControlSignal::Kind::piecewise_constant: {
      double v = 0.0;
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double lo = std::max(a, u.breakpoints[i]);
        const double hi = std::min(b, u.breakpoints[i + 1]);
        if (hi > lo) v += u.values[i] * (hi - lo);
      }
      return v;
    }
  }
  return 0.0;
}

// Cell average over [a, b]; integrators sample controls through this so the
// int |u| accounting stays exact for the closed-form kinds.
inline double cell_average(const ControlSignal& u, double a, double b) {
  if (a == b) return eval(u, a);
  return integral(u, a, b) / (b - a);
}

namespace detail {

// int_a^b |amplitude sin(om t + phase)|^r dt, split at the sign changes so
// each piece is smooth.
inline double sin_abs_pow_integral(double amplitude, double om, double phase,
                                   double r, double a, double b) {
  if (amplitude == 0.0) return 0.0;
  if (om == 0.0) return std::pow(std::abs(amplitude * std::sin(phase)), r) * (b - a);
  const double absamp = std::abs(amplitude);
  // zeros at t = (k pi - phase)/om
  double total = 0.0;
  const double k0 = std::ceil((om * a + phase) / M_PI);
  double lo = a;
  for (double k = k0;; k += 1.0) {
    const double z = (k * M_PI - phase) / om;
    const double hi = std::min(z, b);
    if (hi > lo) {
      if (r == 1.0) {
        total += std::abs(absamp * (std::cos(om * lo + phase) - std::cos(om * hi + phase)) / om);
      } else {
        total += adaptive_simpson(
            [&](double t) { return std::pow(std::abs(amplitude * std::sin(om * t + phase)), r); },
            lo, hi, 1e-13);
      }
    }
    if (z >= b) break;
    lo = z;
  }
  return total;
}

}  // namespace detail

// int_0^T |u|^r dt, then ^(1/r). Closed form for piecewise-constant signals
// and for sinusoids with r in {1, 2}; adaptive quadrature otherwise.
inline double lr_norm(const ControlSignal& u, double r, double T) {
  if (!(r >= 1.0)) throw std::invalid_argument("lr_norm: r must be >= 1");
  double acc = 0.0;
  switch (u.kind) {
    case ControlSignal::Kind::zero:
      return 0.0;
    case ControlSignal::Kind::piecewise_constant: {
      const double hi_dom = u.breakpoints.back();
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double lo = std::max(0.0, u.breakpoints[i]);
        const double hi = std::min(T, u.breakpoints[i + 1]);
        if (hi > lo) acc += std::pow(std::abs(u.values[i]), r) * (hi - lo);
      }
      (void)hi_dom;
      return std::pow(acc, 1.0 / r);
    }
    case ControlSignal::Kind::sinusoid: {
      const double om = 2.0 * M_PI * u.frequency;
      if (r == 2.0 && om != 0.0) {
        // int a^2 sin^2 = a^2 [ t/2 - sin(2(om t + phase))/(4 om) ]
        auto anti = [&](double t) {
          return u.amplitude * u.amplitude *
                 (0.5 * t - std::sin(2.0 * (om * t + u.phase)) / (4.0 * om));
        };
        return std::sqrt(anti(T) - anti(0.0));
      }
      acc = detail::sin_abs_pow_integral(u.amplitude, om, u.phase, r, 0.0, T);
      return std::pow(acc, 1.0 / r);
    }
    case ControlSignal::Kind::sum: {
      acc = adaptive_simpson([&](double t) { return std::pow(std::abs(eval(u, t)), r); },
                             0.0, T, 1e-13);
      return std::pow(acc, 1.0 / r);
    }
  }
  return 0.0;
}

// int_a^b |u| dt, exact where the kind allows it.
inline double abs_integral(const ControlSignal& u, double a, double b) {
  switch (u.kind) {
    case ControlSignal::Kind::zero:
      return 0.0;
    case ControlSignal::Kind::piecewise_constant: {
      double acc = 0.0;
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double lo = std::max(a, u.breakpoints[i]);
        const double hi = std::min(b, u.breakpoints[i + 1]);
        if (hi > lo) acc += std::abs(u.values[i]) * (hi - lo);
      }
      return acc;
    }
    case ControlSignal::Kind::sinusoid:
      return detail::sin_abs_pow_integral(u.amplitude, 2.0 * M_PI * u.frequency,
                                          u.phase, 1.0, a, b);
    case ControlSignal::Kind::sum:
      return adaptive_simpson([&](double t) { return std::abs(eval(u, t)); }, a, b,
                              1e-12);
  }
  return 0.0;
}

// The weakly convergent family u_n = u + sin(2 pi n t): pairings against
// smooth test functions vanish (Riemann-Lebesgue) while the L^2 distance to
// the base stays 1/sqrt(2).
inline ControlSignal weak_family(const ControlSignal& base, int n) {
  if (n < 1) throw std::invalid_argument("weak_family: n must be positive");
  return ControlSignal::sum({base, ControlSignal::sinusoid(1.0, double(n), 0.0)});
}

// --- JSON descriptors -------------------------------------------------------

inline nlohmann::json to_json(const ControlSignal& u) {
  using nlohmann::json;
  switch (u.kind) {
    case ControlSignal::Kind::zero:
      return json{{"kind", "zero"}};
    case ControlSignal::Kind::piecewise_constant:
      return json{{"kind", "piecewise_constant"},
                  {"breakpoints", u.breakpoints},
                  {"values", u.values}};
    case ControlSignal::Kind::sinusoid:
      return json{{"kind", "sinusoid"},
                  {"amplitude", u.amplitude},
                  {"frequency", u.frequency},
                  {"phase", u.phase}};
    case ControlSignal::Kind::sum: {
      json terms = json::array();
      for (const auto& t : u.terms) terms.push_back(to_json(t));
      return json{{"kind", "sum"}, {"terms", terms}};
    }
  }
  return nlohmann::json{{"kind", "zero"}};
}

inline ControlSignal control_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("control: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  auto check_keys = [&](std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed)
        if (it.key() == a) ok = true;
      if (!ok)
        throw std::invalid_argument("control: unknown key \"" + it.key() + "\"");
    }
  };
  if (kind == "zero") {
    check_keys({"kind"});
    return ControlSignal::zero();
  }
  if (kind == "piecewise_constant") {
    check_keys({"kind", "breakpoints", "values"});
    return ControlSignal::piecewise(j.at("breakpoints").get<std::vector<double>>(),
                                    j.at("values").get<std::vector<double>>());
  }
  if (kind == "sinusoid") {
    check_keys({"kind", "amplitude", "frequency", "phase"});
    return ControlSignal::sinusoid(j.at("amplitude").get<double>(),
                                   j.at("frequency").get<double>(),
                                   j.at("phase").get<double>());
  }
  if (kind == "sum") {
    check_keys({"kind", "terms"});
    std::vector<ControlSignal> terms;
    for (const auto& t : j.at("terms")) terms.push_back(control_from_json(t));
    return ControlSignal::sum(std::move(terms));
  }
  throw std::invalid_argument("control: unknown kind \"" + kind + "\"");
}

}  // namespace gpspec
