#pragma once

// Spectral states, tensor Gauss-Hermite transforms, free propagator and
// Sobolev norms.

#include <algorithm>
#include <complex>
#include <random>
#include <span>

#include "hermite.hpp"

namespace gpspec {

using cplx = std::complex<double>;

struct SpectralState {
  BasisPtr basis;
  std::vector<cplx> coeffs;  // flat row-major over (k_1..k_d)
};

struct GridField {
  BasisPtr basis;
  std::vector<cplx> values;  // flat row-major over the tensor node grid
};

inline SpectralState zero_state(BasisPtr basis) {
  return {basis, std::vector<cplx>(basis->n_coeffs(), cplx{0.0, 0.0})};
}

inline SpectralState ground_state(BasisPtr basis) {
  SpectralState s = zero_state(basis);
  s.coeffs[0] = 1.0;
  return s;
}

namespace detail {

// Apply matrix T (rows x cols, row-major) along one axis of a row-major
// tensor. in has `cols` entries along the axis, out gets `rows`.
inline std::vector<cplx> apply_axis(const std::vector<cplx>& in, int dim,
                                    int axis, int in_extent, int out_extent,
                                    const double* T, int other_extent_before,
                                    int other_extent_after) {
  (void)dim;
  const std::size_t outer = std::size_t(other_extent_before);
  const std::size_t inner = std::size_t(other_extent_after);
  std::vector<cplx> out(outer * std::size_t(out_extent) * inner, cplx{0.0, 0.0});
  for (std::size_t o = 0; o < outer; ++o)
    for (int r = 0; r < out_extent; ++r) {
      cplx* dst = out.data() + (o * out_extent + r) * inner;
      const double* row = T + std::size_t(r) * in_extent;
      for (int c = 0; c < in_extent; ++c) {
        const cplx* src = in.data() + (o * in_extent + c) * inner;
        const double t = row[c];
        if (t == 0.0) continue;
        for (std::size_t i = 0; i < inner; ++i) dst[i] += t * src[i];
      }
    }
  (void)axis;
  return out;
}

enum class AxisOp { synthesis, analysis, derivative };

// Transform all axes. `ops[a]` selects the per-axis matrix.
inline std::vector<cplx> tensor_transform(const HermiteBasis& b,
                                          std::vector<cplx> data,
                                          const AxisOp* ops, bool to_grid) {
  const int in_n = to_grid ? b.n_modes : b.n_nodes;
  const int out_n = to_grid ? b.n_nodes : b.n_modes;
  // Build per-op matrices lazily (row-major, out_n x in_n).
  std::vector<double> synth, anal, deriv;
  auto matrix = [&](AxisOp op) -> const double* {
    if (op == AxisOp::analysis) {
      if (anal.empty()) {
        anal.resize(std::size_t(b.n_modes) * b.n_nodes);
        for (int k = 0; k < b.n_modes; ++k)
          for (int i = 0; i < b.n_nodes; ++i)
            anal[std::size_t(k) * b.n_nodes + i] =
                b.weights[i] * b.hval[std::size_t(k) * b.n_nodes + i];
      }
      return anal.data();
    }
    const std::vector<double>& tab = (op == AxisOp::synthesis) ? b.hval : b.hder;
    std::vector<double>& m = (op == AxisOp::synthesis) ? synth : deriv;
    if (m.empty()) {
      m.resize(std::size_t(b.n_nodes) * b.n_modes);
      for (int i = 0; i < b.n_nodes; ++i)
        for (int k = 0; k < b.n_modes; ++k)
          m[std::size_t(i) * b.n_modes + k] = tab[std::size_t(k) * b.n_nodes + i];
    }
    return m.data();
  };

  for (int a = 0; a < b.dim; ++a) {
    int before = 1, after = 1;
    for (int j = 0; j < a; ++j) before *= out_n;  // axes already transformed
    for (int j = a + 1; j < b.dim; ++j) after *= in_n;
    data = apply_axis(data, b.dim, a, in_n, out_n, matrix(ops[a]), before, after);
  }
  return data;
}

}  // namespace detail

// Forward transform: grid samples -> coefficients via the quadrature rule.
inline SpectralState to_coeffs(const GridField& field) {
  const HermiteBasis& b = *field.basis;
  detail::AxisOp ops[3] = {detail::AxisOp::analysis, detail::AxisOp::analysis,
                           detail::AxisOp::analysis};
  return {field.basis, detail::tensor_transform(b, field.values, ops, false)};
}

// Inverse transform: coefficients -> values on the tensor node grid.
inline GridField from_coeffs(const SpectralState& state) {
  const HermiteBasis& b = *state.basis;
  detail::AxisOp ops[3] = {detail::AxisOp::synthesis, detail::AxisOp::synthesis,
                           detail::AxisOp::synthesis};
  return {state.basis, detail::tensor_transform(b, state.coeffs, ops, true)};
}

// Grid values of the partial derivative along `axis`.
inline GridField gradient_grid(const SpectralState& state, int axis) {
  const HermiteBasis& b = *state.basis;
  detail::AxisOp ops[3] = {detail::AxisOp::synthesis, detail::AxisOp::synthesis,
                           detail::AxisOp::synthesis};
  ops[axis] = detail::AxisOp::derivative;
  return {state.basis, detail::tensor_transform(b, state.coeffs, ops, true)};
}

inline double mass(const SpectralState& s) {
  double m = 0.0;
  for (const cplx& c : s.coeffs) m += std::norm(c);
  return std::sqrt(m);
}

// sqrt(sum_k lambda_k^s |alpha_k|^2); s = 0 recovers the L^2 mass.
inline double sobolev_norm(const SpectralState& s, double regularity) {
  const HermiteBasis& b = *s.basis;
  double m = 0.0;
  for (std::size_t f = 0; f < s.coeffs.size(); ++f)
    m += std::pow(b.eigs[f], regularity) * std::norm(s.coeffs[f]);
  return std::sqrt(m);
}

inline double h1_norm(const SpectralState& s) { return sobolev_norm(s, 1.0); }

inline double h1_dist(const SpectralState& a, const SpectralState& b) {
  if (!a.basis->same_discretization(*b.basis))
    throw std::invalid_argument("h1_dist: basis mismatch");
  const HermiteBasis& bb = *a.basis;
  double m = 0.0;
  for (std::size_t f = 0; f < a.coeffs.size(); ++f)
    m += bb.eigs[f] * std::norm(a.coeffs[f] - b.coeffs[f]);
  return std::sqrt(m);
}

// e^{itH}: diagonal phases alpha_k -> e^{it lambda_k} alpha_k.
inline SpectralState propagate_free(const SpectralState& s, double t) {
  SpectralState out = s;
  const HermiteBasis& b = *s.basis;
  for (std::size_t f = 0; f < out.coeffs.size(); ++f)
    out.coeffs[f] *= std::polar(1.0, t * b.eigs[f]);
  return out;
}

namespace detail {

inline double grid_lp_norm(const HermiteBasis& b, const std::vector<double>& absval,
                           double p) {
  // sum over tensor grid of prod(weights) * |f|^p, then ^(1/p)
  double acc = 0.0;
  const int n = b.n_nodes;
  int idx[3] = {0, 0, 0};
  const std::size_t total = b.n_grid();
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t r = f;
    double w = 1.0;
    for (int a = b.dim - 1; a >= 0; --a) {
      idx[a] = int(r % n);
      r /= n;
      w *= b.weights[idx[a]];
    }
    acc += w * std::pow(absval[f], p);
  }
  return std::pow(acc, 1.0 / p);
}

inline void grid_point(const HermiteBasis& b, std::size_t flat, double* x) {
  for (int a = b.dim - 1; a >= 0; --a) {
    x[a] = b.nodes[flat % b.n_nodes];
    flat /= b.n_nodes;
  }
}

}  // namespace detail

// Quadrature approximation of the W^{s,p} norm:
//   s = 0: ||f||_{L^p}
//   s = 1: || |grad f| ||_{L^p} + || <x> f ||_{L^p},  <x> = sqrt(1+|x|^2).
// The gradient is applied through the exact coefficient-space ladder.
inline double lebesgue_sobolev_norm(const SpectralState& s, int regularity, double p) {
  if (regularity != 0 && regularity != 1)
    throw std::invalid_argument("lebesgue_sobolev_norm: s must be 0 or 1");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw std::invalid_argument("lebesgue_sobolev_norm: p must be finite and >= 1");
  const HermiteBasis& b = *s.basis;
  GridField g = from_coeffs(s);
  const std::size_t total = b.n_grid();
  std::vector<double> absval(total);
  if (regularity == 0) {
    for (std::size_t f = 0; f < total; ++f) absval[f] = std::abs(g.values[f]);
    return detail::grid_lp_norm(b, absval, p);
  }
  // | grad f | pointwise
  std::fill(absval.begin(), absval.end(), 0.0);
  for (int a = 0; a < b.dim; ++a) {
    GridField da = gradient_grid(s, a);
    for (std::size_t f = 0; f < total; ++f) absval[f] += std::norm(da.values[f]);
  }
  for (std::size_t f = 0; f < total; ++f) absval[f] = std::sqrt(absval[f]);
  const double grad_part = detail::grid_lp_norm(b, absval, p);
  double x[3];
  for (std::size_t f = 0; f < total; ++f) {
    detail::grid_point(b, f, x);
    double r2 = 0.0;
    for (int a = 0; a < b.dim; ++a) r2 += x[a] * x[a];
    absval[f] = std::sqrt(1.0 + r2) * std::abs(g.values[f]);
  }
  return grad_part + detail::grid_lp_norm(b, absval, p);
}

// Point evaluation of a band-limited state (and optionally its gradient).
inline cplx evaluate(const SpectralState& s, const double* x, cplx* grad = nullptr) {
  const HermiteBasis& b = *s.basis;
  const int N = b.n_modes;
  std::vector<double> hv(std::size_t(b.dim) * (N + 1));
  for (int a = 0; a < b.dim; ++a)
    hermite_values(N + 1, x[a], hv.data() + std::size_t(a) * (N + 1));
  auto hval = [&](int a, int k) { return hv[std::size_t(a) * (N + 1) + k]; };
  auto hderiv = [&](int a, int k) {
    const double lo = (k > 0) ? std::sqrt(k / 2.0) * hval(a, k - 1) : 0.0;
    return lo - std::sqrt((k + 1) / 2.0) * hval(a, k + 1);
  };
  cplx val{0.0, 0.0};
  if (grad)
    for (int a = 0; a < b.dim; ++a) grad[a] = cplx{0.0, 0.0};
  int k[3] = {0, 0, 0};
  for (std::size_t f = 0; f < s.coeffs.size(); ++f) {
    b.unflatten(f, k);
    double prod = 1.0;
    for (int a = 0; a < b.dim; ++a) prod *= hval(a, k[a]);
    val += s.coeffs[f] * prod;
    if (grad)
      for (int a = 0; a < b.dim; ++a) {
        double pd = hderiv(a, k[a]);
        for (int o = 0; o < b.dim; ++o)
          if (o != a) pd *= hval(o, k[o]);
        grad[a] += s.coeffs[f] * pd;
      }
  }
  return val;
}

// Zero-pad a band-limited state into a finer-mode basis on compatible nodes.
inline SpectralState lift(const SpectralState& s, BasisPtr target) {
  const HermiteBasis& src = *s.basis;
  const HermiteBasis& dst = *target;
  if (dst.dim != src.dim || dst.n_modes < src.n_modes)
    throw std::invalid_argument("lift: incompatible target basis");
  SpectralState out = zero_state(target);
  int k[3] = {0, 0, 0};
  for (std::size_t f = 0; f < s.coeffs.size(); ++f) {
    src.unflatten(f, k);
    std::size_t g = 0;
    for (int a = 0; a < src.dim; ++a) g = g * dst.n_modes + k[a];
    out.coeffs[g] = s.coeffs[f];
  }
  return out;
}

// Drop modes beyond the target band limit.
inline SpectralState truncate(const SpectralState& s, BasisPtr target) {
  const HermiteBasis& src = *s.basis;
  const HermiteBasis& dst = *target;
  if (dst.dim != src.dim || dst.n_modes > src.n_modes)
    throw std::invalid_argument("truncate: incompatible target basis");
  SpectralState out = zero_state(target);
  int k[3] = {0, 0, 0};
  for (std::size_t f = 0; f < out.coeffs.size(); ++f) {
    dst.unflatten(f, k);
    std::size_t g = 0;
    for (int a = 0; a < src.dim; ++a) g = g * src.n_modes + k[a];
    out.coeffs[f] = s.coeffs[g];
  }
  return out;
}

// Random band-limited state with coefficients ~ Gaussian / lambda_k, so H^1
// norms stay well-conditioned across basis sizes.
inline SpectralState random_state(BasisPtr basis, std::mt19937_64& rng) {
  SpectralState s = zero_state(basis);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t f = 0; f < s.coeffs.size(); ++f) {
    const double re = gauss(rng), im = gauss(rng);
    s.coeffs[f] = cplx{re, im} / basis->eigs[f];
  }
  return s;
}

inline SpectralState normalized(const SpectralState& s, double target_mass = 1.0) {
  const double m = mass(s);
  if (m == 0.0) throw std::invalid_argument("normalized: zero state");
  SpectralState out = s;
  for (cplx& c : out.coeffs) c *= target_mass / m;
  return out;
}

}  // namespace gpspec
