#pragma once

// The singular control potential K(x) = log|x| 1_{|x|<=1}, its grid action,
// and the Hardy / energy-derivative diagnostics.

#include "quadrature.hpp"
#include "state.hpp"

namespace gpspec {

// K(x) = log(|x|) for |x| <= 1, 0 otherwise. K(x) = 0 at |x| = 1 either way;
// the closed boundary convention keeps the evaluation continuous from outside.
inline double eval_K(const double* x, int dim) {
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) r2 += x[a] * x[a];
  if (r2 == 0.0)
    throw std::domain_error("eval_K: singular evaluation at the origin");
  if (r2 >= 1.0) return 0.0;
  return 0.5 * std::log(r2);
}

inline std::vector<double> eval_K(const std::vector<std::vector<double>>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(eval_K(p.data(), int(p.size())));
  return out;
}

// K at the tensor quadrature nodes (nodes never include the origin).
inline std::vector<double> potential_K_grid(const HermiteBasis& b) {
  std::vector<double> K(b.n_grid());
  double x[3];
  for (std::size_t f = 0; f < K.size(); ++f) {
    detail::grid_point(b, f, x);
    K[f] = eval_K(x, b.dim);
  }
  return K;
}

// psi -> K psi, pseudospectral: transform to the grid, multiply pointwise,
// transform back.
inline SpectralState multiply_K(const SpectralState& s) {
  GridField g = from_coeffs(s);
  const std::vector<double> K = potential_K_grid(*s.basis);
  for (std::size_t f = 0; f < g.values.size(); ++f) g.values[f] *= K[f];
  return to_coeffs(g);
}

// || |x|^{-1} psi ||_{L^2} / || psi ||_{H^1} on R^3.
//
// The r^{-2} weight defeats plain tensor quadrature, so the origin
// singularity is subtracted first:
//   int |psi|^2/r^2 = int (|psi|^2 - |psi(0)|^2 e^{-r^2})/r^2
//                     + |psi(0)|^2 * 2 pi^{3/2},
// which is exact for the Gaussian ground state and bounded otherwise.
inline double hardy_quotient(const SpectralState& s) {
  const HermiteBasis& b = *s.basis;
  if (b.dim != 3)
    throw std::invalid_argument("hardy_quotient: requires dim = 3");
  const double h1 = h1_norm(s);
  if (h1 == 0.0)
    throw std::invalid_argument("hardy_quotient: zero state");
  double origin[3] = {0.0, 0.0, 0.0};
  const double p0 = std::norm(evaluate(s, origin));
  GridField g = from_coeffs(s);
  double acc = 0.0;
  double x[3];
  const int n = b.n_nodes;
  for (std::size_t f = 0; f < g.values.size(); ++f) {
    std::size_t r = f;
    double w = 1.0;
    for (int a = 2; a >= 0; --a) {
      x[a] = b.nodes[r % n];
      w *= b.weights[r % n];
      r /= n;
    }
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    acc += w * (std::norm(g.values[f]) - p0 * std::exp(-r2)) / r2;
  }
  const double num2 = acc + p0 * 2.0 * std::pow(M_PI, 1.5);
  return std::sqrt(std::max(num2, 0.0)) / h1;
}

// int psi-bar grad K . grad psi dx with grad K = x/|x|^2 on |x| < 1.
//
// Computed in polar/spherical form, where the r^{d-1} Jacobian cancels the
// singularity and the integrand is smooth:
//   d=1: int_0^1 (g(r) - g(-r))/r dr,            g = psi-bar psi'
//   d=2: int_0^1 dr  oint psi-bar (w . grad psi) dtheta
//   d=3: int_0^1 r dr oint psi-bar (w . grad psi) dOmega
// Angular rules are exact for the band-limited polynomial degree.
inline cplx grad_K_dot_grad(const SpectralState& s, int refine = 1) {
  const HermiteBasis& b = *s.basis;
  const int N = b.n_modes;
  std::vector<double> xr, wr;
  gauss_legendre((2 * N + 16) * refine, 0.0, 1.0, xr, wr);
  cplx total{0.0, 0.0};

  if (b.dim == 1) {
    for (std::size_t i = 0; i < xr.size(); ++i) {
      cplx dp, dm;
      const double xp = xr[i], xm = -xr[i];
      const cplx vp = evaluate(s, &xp, &dp);
      const cplx vm = evaluate(s, &xm, &dm);
      total += wr[i] * (std::conj(vp) * dp - std::conj(vm) * dm) / xr[i];
    }
    return total;
  }

  const int n_phi = (4 * N + 4) * refine;
  if (b.dim == 2) {
    for (std::size_t i = 0; i < xr.size(); ++i) {
      cplx ang{0.0, 0.0};
      for (int j = 0; j < n_phi; ++j) {
        const double th = 2.0 * M_PI * j / n_phi;
        const double w0 = std::cos(th), w1 = std::sin(th);
        double x[2] = {xr[i] * w0, xr[i] * w1};
        cplx grad[2];
        const cplx v = evaluate(s, x, grad);
        ang += std::conj(v) * (w0 * grad[0] + w1 * grad[1]);
      }
      total += wr[i] * (2.0 * M_PI / n_phi) * ang;
    }
    return total;
  }

  std::vector<double> mu, wmu;
  gauss_legendre((2 * N + 4) * refine, -1.0, 1.0, mu, wmu);
  for (std::size_t i = 0; i < xr.size(); ++i) {
    cplx ang{0.0, 0.0};
    for (std::size_t m = 0; m < mu.size(); ++m) {
      const double st = std::sqrt(std::max(0.0, 1.0 - mu[m] * mu[m]));
      cplx ring{0.0, 0.0};
      for (int j = 0; j < n_phi; ++j) {
        const double ph = 2.0 * M_PI * j / n_phi;
        const double w0 = st * std::cos(ph), w1 = st * std::sin(ph), w2 = mu[m];
        double x[3] = {xr[i] * w0, xr[i] * w1, xr[i] * w2};
        cplx grad[3];
        const cplx v = evaluate(s, x, grad);
        ring += std::conj(v) * (w0 * grad[0] + w1 * grad[1] + w2 * grad[2]);
      }
      ang += wmu[m] * (2.0 * M_PI / n_phi) * ring;
    }
    total += wr[i] * xr[i] * ang;
  }
  return total;
}

// Closed-form ||K||_{L^p}: int_{|x|<=1} |log|x||^p dx = S_d Gamma(p+1)/d^{p+1}.
inline double lp_norm_K(int dim, double p) {
  static const double surface[4] = {0.0, 2.0, 2.0 * M_PI, 4.0 * M_PI};
  if (dim < 1 || dim > 3) throw std::invalid_argument("lp_norm_K: dim 1..3");
  return std::pow(surface[dim] * std::tgamma(p + 1.0) / std::pow(double(dim), p + 1.0),
                  1.0 / p);
}

// Grid-quadrature ||K||_{L^p} on the basis nodes (refinement study companion
// to the closed form above).
inline double grid_lp_norm_K(const HermiteBasis& b, double p) {
  const std::vector<double> K = potential_K_grid(b);
  std::vector<double> absval(K.size());
  for (std::size_t f = 0; f < K.size(); ++f) absval[f] = std::abs(K[f]);
  return detail::grid_lp_norm(b, absval, p);
}

}  // namespace gpspec
