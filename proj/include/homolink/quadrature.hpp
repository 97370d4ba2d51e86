#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "homolink/chain.hpp"

namespace homolink {

/// Controls the quadrature used for all invariant integrals.
struct QuadConfig {
  int order = 4;             // Gauss points per dimension
  int max_depth = 12;        // adaptive bisection depth per simplex pair
  double split_ratio = 0.5;  // split while diameter > split_ratio * distance
  double eps_sing = 1e-6;    // abort distance to the skeleton

  void validate() const {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    if (max_depth < 0 || max_depth > 12)
      throw std::invalid_argument("quadrature depth must be in [0, 12]");
    if (!(split_ratio > 0.0 && split_ratio <= 1.0))
      throw std::invalid_argument("split ratio must be in (0, 1]");
    if (!(eps_sing > 0.0))
      throw std::invalid_argument("eps_sing must be > 0");
  }
};

namespace quad {

struct Rule1D {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule on [0,1], exact for polynomials of degree 2n-1.
inline Rule1D gauss_legendre(int n) {
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n over [-1, 1]
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pn1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

/// Quadrature node on the reference k-simplex {t >= 0, sum t <= 1}.
struct SimplexNode {
  std::array<double, kMaxDim> t;
  double weight;
};

struct SimplexRule {
  int dim = 0;
  std::vector<SimplexNode> nodes;  // weights sum to 1/dim!
  // flat copies for tight loops: coords[i * dim + d], weights[i]
  std::vector<double> flat_coords;
  std::vector<double> flat_weights;

  void build_flat() {
    flat_coords.clear();
    flat_weights.clear();
    for (const auto& n : nodes) {
      for (int d = 0; d < dim; ++d) flat_coords.push_back(n.t[d]);
      flat_weights.push_back(n.weight);
    }
  }
};

/// Tensor-product Gauss rule collapsed onto the reference simplex
/// (Duffy-style map t_i = xi_i * prod_{j<i} (1 - xi_j)).
inline SimplexRule make_simplex_rule(int k, int order) {
  SimplexRule rule;
  rule.dim = k;
  if (k == 0) {
    SimplexNode node;
    node.t.fill(0.0);
    node.weight = 1.0;
    rule.nodes.push_back(node);
    rule.build_flat();
    return rule;
  }
  const Rule1D g = gauss_legendre(order);
  const int n = order;
  std::vector<int> idx(k, 0);
  while (true) {
    SimplexNode node;
    node.t.fill(0.0);
    double rest = 1.0;  // prod_{j<i} (1 - xi_j)
    double w = 1.0;
    for (int i = 0; i < k; ++i) {
      const double xi = g.nodes[idx[i]];
      node.t[i] = xi * rest;
      w *= g.weights[idx[i]];
      // the Duffy Jacobian contributes (1-xi_j)^(k-1-j)
      for (int rep = 0; rep < k - 1 - i; ++rep) w *= (1.0 - xi);
      rest *= (1.0 - xi);
    }
    node.weight = w;
    rule.nodes.push_back(node);

    int carry = k - 1;
    while (carry >= 0 && ++idx[carry] == n) idx[carry--] = 0;
    if (carry < 0) break;
  }
  rule.build_flat();
  return rule;
}

/// Shared, lazily built rules keyed by (dim, order).
inline const SimplexRule& simplex_rule(int k, int order) {
  static std::mutex mu;
  static auto* cache = new std::map<std::pair<int, int>, SimplexRule>();
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache->try_emplace({k, order});
  if (inserted) it->second = make_simplex_rule(k, order);
  return it->second;
}

/// World coordinates of a reference-simplex point under the affine map of s.
inline Vec map_to_simplex(const Simplex& s, const double* t) {
  Vec x = s.vertices[0];
  for (int i = 0; i < s.dim(); ++i) {
    const Vec e = s.vertices[i + 1] - s.vertices[0];
    for (int d = 0; d < x.dim(); ++d) x[d] += t[i] * e[d];
  }
  return x;
}

}  // namespace quad
}  // namespace homolink
