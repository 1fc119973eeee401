#pragma once

// Hermite eigenbasis of H = -Delta + |x|^2 on R^d, d = 1..3.
// Gauss-Hermite quadrature, basis tables, eigenvalue bookkeeping.

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpspec {

struct QuadRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // plain-dx weights: sum_i w_i f(x_i) ~ int f dx
};

// Evaluate the L^2-orthonormal Hermite functions h_0..h_{n-1} at x.
// h_k(x) = (2^k k! sqrt(pi))^{-1/2} H_k(x) e^{-x^2/2}, generated by the
// stable normalized three-term recurrence (no raw-polynomial overflow).
inline void hermite_values(int n, double x, double* out) {
  if (n <= 0) return;
  out[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 1) return;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (int k = 1; k + 1 < n; ++k)
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * x * out[k] -
                 std::sqrt(double(k) / (k + 1)) * out[k - 1];
}

// Gauss-Hermite rule with m nodes, returned with plain-dx weights
// w_i = 1 / sum_{k<m} h_k(x_i)^2 so that sum_i w_i p(x_i) e^{-x_i^2} is exact
// for polynomials p of degree <= 2m-1.
inline QuadRule gauss_hermite(int m) {
  if (m < 1) throw std::invalid_argument("gauss_hermite: m must be positive");
  QuadRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  std::vector<double> h(m + 1);

  // Newton on h_m(x); roots found from the largest down, then mirrored.
  double z = 0.0, z1 = 0.0, z2 = 0.0;
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * m + 1.0) - 1.85575 * std::pow(2.0 * m + 1.0, -1.0 / 6.0);
    else if (i == 1)
      z -= 1.14 * std::pow(double(m), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * z2;
    else if (i == 3)
      z = 1.91 * z - 0.91 * z2;
    else
      z = 2.0 * z - z2;

    for (int it = 0; it < 100; ++it) {
      hermite_values(m + 1, z, h.data());
      // h_m'(z) = sqrt(2m) h_{m-1}(z) - z h_m(z)
      const double d = std::sqrt(2.0 * m) * h[m - 1] - z * h[m];
      const double dz = h[m] / d;
      z -= dz;
      if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    hermite_values(m, z, h.data());
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += h[k] * h[k];
    rule.nodes[m - 1 - i] = z;
    rule.nodes[i] = -z;
    rule.weights[m - 1 - i] = 1.0 / s;
    rule.weights[i] = 1.0 / s;
    z2 = z1;
    z1 = z;
  }
  return rule;
}

// Tensor Hermite basis on R^d. n_nodes quadrature nodes per axis carry the
// full rule; hval/hder tabulate h_k and h_k' at the nodes for k < n_modes.
struct HermiteBasis {
  int dim = 1;
  int n_modes = 0;  // per-axis mode count
  int n_nodes = 0;  // per-axis node count
  std::vector<double> nodes;
  std::vector<double> weights;  // plain-dx weights
  std::vector<double> hval;     // [k * n_nodes + i] = h_k(x_i)
  std::vector<double> hder;     // [k * n_nodes + i] = h_k'(x_i)
  std::vector<double> eigs;     // flat multi-index -> sum_a (2 k_a + 1)

  std::size_t n_coeffs() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= std::size_t(n_modes);
    return n;
  }
  std::size_t n_grid() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= std::size_t(n_nodes);
    return n;
  }
  // Decode a flat row-major coefficient index into (k_1..k_d).
  void unflatten(std::size_t flat, int* k) const {
    for (int a = dim - 1; a >= 0; --a) {
      k[a] = int(flat % n_modes);
      flat /= n_modes;
    }
  }
  bool same_discretization(const HermiteBasis& o) const {
    return dim == o.dim && n_modes == o.n_modes && n_nodes == o.n_nodes;
  }
};

using BasisPtr = std::shared_ptr<const HermiteBasis>;

namespace detail {

inline BasisPtr make_basis(int dim, int n_modes, int n_nodes) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("build_basis: dim must be 1, 2 or 3");
  if (n_modes < 2)
    throw std::invalid_argument("build_basis: n_modes must be >= 2");
  if (n_modes % 2 != 0)
    throw std::invalid_argument("build_basis: n_modes must be even");

  auto b = std::make_shared<HermiteBasis>();
  b->dim = dim;
  b->n_modes = n_modes;
  b->n_nodes = n_nodes;
  QuadRule rule = gauss_hermite(n_nodes);
  b->nodes = std::move(rule.nodes);
  b->weights = std::move(rule.weights);

  // Tabulate one extra mode so derivatives close under the ladder
  // h_k' = sqrt(k/2) h_{k-1} - sqrt((k+1)/2) h_{k+1}.
  std::vector<double> col(n_modes + 1);
  b->hval.assign(std::size_t(n_modes) * n_nodes, 0.0);
  b->hder.assign(std::size_t(n_modes) * n_nodes, 0.0);
  for (int i = 0; i < n_nodes; ++i) {
    hermite_values(n_modes + 1, b->nodes[i], col.data());
    for (int k = 0; k < n_modes; ++k) {
      b->hval[std::size_t(k) * n_nodes + i] = col[k];
      const double lo = (k > 0) ? std::sqrt(k / 2.0) * col[k - 1] : 0.0;
      b->hder[std::size_t(k) * n_nodes + i] = lo - std::sqrt((k + 1) / 2.0) * col[k + 1];
    }
  }

  b->eigs.resize(b->n_coeffs());
  int k[3] = {0, 0, 0};
  for (std::size_t f = 0; f < b->eigs.size(); ++f) {
    b->unflatten(f, k);
    double lam = 0.0;
    for (int a = 0; a < dim; ++a) lam += 2.0 * k[a] + 1.0;
    b->eigs[f] = lam;
  }
  return b;
}

}  // namespace detail

// Production basis: 2N nodes per axis for N modes, so products of two basis
// functions integrate exactly (aliasing control for the cubic term).
inline BasisPtr build_basis(int dim, int n_modes) {
  return detail::make_basis(dim, n_modes, 2 * n_modes);
}

// Square collocation basis: M modes on M nodes. The discrete transform is
// exactly unitary (the M-node rule integrates h_j h_k exactly for j,k < M),
// which is what makes split-step phase factors mass-exact.
inline BasisPtr collocation_basis(int dim, int n_modes) {
  return detail::make_basis(dim, n_modes, n_modes);
}

}  // namespace gpspec
