#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "homolink/chain.hpp"
#include "homolink/partitions.hpp"
#include "homolink/quadrature.hpp"
#include "homolink/samplers.hpp"

// Numerical evaluation of the linking-type invariant of an (N-1)-cycle
// against a (D-N)-dimensional skeleton cycle in R^D.
//
// The kernel is the coefficient family of the rotation-symmetric generator
// of H^{D-1} of the punctured space,
//     G_k(s) = s_k / (A_{D-1} |s|^D),
// integrated over simplex pairs after expanding the pulled-back form into
// ordered two-partitions of the axis set without k. For a pair of affine
// simplices only G_k varies over the quadrature nodes; the Jacobian minors
// are constants of the pair.
//
// Sign convention: the assembled (N-1)-form carries a global (-1)^(D-N) so
// that it specializes to the residue 1-form (D=2), the Biot-Savart field
// 1-form (D=3, N=2) and the flux 2-form of a unit charge (D=3, N=3). With
// this choice a counterclockwise loop around a point in the plane has
// invariant +1.

namespace homolink {

/// (D-1)-volume of the unit (D-1)-sphere: D pi^(D/2) / Gamma(D/2 + 1).
inline double unit_sphere_volume(int D) {
  if (D < 1) throw std::invalid_argument("unit_sphere_volume: D must be >= 1");
  return D * std::pow(std::numbers::pi, 0.5 * D) / std::tgamma(0.5 * D + 1.0);
}

/// Coefficient function G_k (1-based axis k). Odd under s_k -> -s_k and
/// homogeneous of degree -(D-1).
inline double g_k(const Vec& s, int k, double eps_sing = 1e-6) {
  const int D = s.dim();
  if (k < 1 || k > D) throw std::invalid_argument("g_k: axis out of range");
  const double r2 = s.norm2();
  if (r2 <= eps_sing * eps_sing)
    throw SingularProximityError("difference vector", std::sqrt(r2));
  return s[k - 1] / (unit_sphere_volume(D) * std::pow(r2, 0.5 * D));
}

/// m-vector of invariant values, one entry per skeleton component.
struct Signature {
  std::vector<double> values;

  Signature() = default;
  explicit Signature(std::vector<double> v) : values(std::move(v)) {}
  Signature(std::initializer_list<double> v) : values(v) {}

  int size() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }

  double inf_distance(const Signature& o) const {
    double d = 0.0;
    for (int i = 0; i < size(); ++i)
      d = std::max(d, std::abs(values[i] - o.values[i]));
    return d;
  }

  /// Max entry-wise distance to the nearest integer vector.
  double integer_deviation() const {
    double d = 0.0;
    for (double v : values) d = std::max(d, std::abs(v - std::round(v)));
    return d;
  }

  Signature operator+(const Signature& o) const {
    Signature r = *this;
    for (int i = 0; i < size(); ++i) r.values[i] += o.values[i];
    return r;
  }
  Signature operator-(const Signature& o) const {
    Signature r = *this;
    for (int i = 0; i < size(); ++i) r.values[i] -= o.values[i];
    return r;
  }
  Signature operator-() const {
    Signature r = *this;
    for (double& v : r.values) v = -v;
    return r;
  }
};

/// Counters filled by the integrators; totals are order-independent.
struct EngineStats {
  std::atomic<std::uint64_t> leaf_pairs{0};
  std::atomic<std::uint64_t> subdivisions{0};

  void reset() {
    leaf_pairs = 0;
    subdivisions = 0;
  }
};

namespace detail {

// r^(-D) with r2 = r^2
inline double inv_pow_r(double r2, int D) {
  double p = 1.0;
  for (int i = 0; i < D / 2; ++i) p *= r2;
  if (D % 2) p *= std::sqrt(r2);
  return 1.0 / p;
}

// det of the square submatrix of the edge Jacobian of `s` taking the
// 1-based coordinate rows in `rows`. Empty selection gives 1.
inline double jacobian_minor(const Simplex& s, const std::vector<int>& rows) {
  const int m = static_cast<int>(rows.size());
  if (m == 0) return 1.0;
  double mat[kMaxDim][kMaxDim];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      mat[a][b] = s.vertices[b + 1][rows[a] - 1] - s.vertices[0][rows[a] - 1];
  double det = 1.0;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(mat[piv][c], mat[col][c]);
      det = -det;
    }
    if (mat[col][col] == 0.0) return 0.0;
    det *= mat[col][col];
    for (int r = col + 1; r < m; ++r) {
      const double f = mat[r][col] / mat[col][col];
      for (int c = col; c < m; ++c) mat[r][c] -= f * mat[col][c];
    }
  }
  return det;
}

// One side of a simplex pair: world quadrature nodes plus the Jacobian
// minors indexed by (k, partition). `primed` selects rho_l rows (the
// skeleton side); otherwise rho_r rows (the candidate side).
struct PairSide {
  Simplex simplex;
  Vec centroid;
  double radius = 0.0;
  double diameter = 0.0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::vector<std::vector<double>> minors;  // [D][n_partitions]

  PairSide() = default;

  PairSide(Simplex sx, int D, int w_left, bool primed, int order)
      : simplex(std::move(sx)) {
    centroid = simplex.centroid();
    radius = simplex.radius();
    diameter = simplex.diameter();
    const auto& rule = quad::simplex_rule(simplex.dim(), order);
    nodes.reserve(rule.nodes.size());
    weights.reserve(rule.nodes.size());
    for (const auto& qn : rule.nodes) {
      nodes.push_back(quad::map_to_simplex(simplex, qn.t.data()));
      weights.push_back(qn.weight);
    }
    minors.assign(D, {});
    for (int k = 1; k <= D; ++k) {
      const auto& parts = partition_table(D, k, w_left);
      minors[k - 1].resize(parts.size());
      for (std::size_t p = 0; p < parts.size(); ++p)
        minors[k - 1][p] = jacobian_minor(
            simplex, primed ? parts[p].left : parts[p].right);
    }
  }

  // Bisect along the longest edge; orientation-consistent halves.
  std::pair<PairSide, PairSide> split(int D, int w_left, bool primed,
                                      int order) const {
    const auto& vs = simplex.vertices;
    int bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        const double d = distance(vs[i], vs[j]);
        if (d > best) {
          best = d;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    const Vec mid = (vs[bi] + vs[bj]) * 0.5;
    std::vector<Vec> va = vs, vb = vs;
    va[bj] = mid;
    vb[bi] = mid;
    return {PairSide(Simplex(std::move(va)), D, w_left, primed, order),
            PairSide(Simplex(std::move(vb)), D, w_left, primed, order)};
  }
};

// Flattened partition tables for one (D, w_left): P = C(D-1, w_left)
// partitions for every k.
struct PartitionPack {
  int D = 0;
  int w_left = 0;
  int P = 0;
  std::array<const std::vector<OrderedPartition>*, kMaxDim> tables{};

  PartitionPack() = default;
  PartitionPack(int D_, int w) : D(D_), w_left(w) {
    for (int k = 1; k <= D; ++k) tables[k - 1] = &partition_table(D, k, w);
    P = static_cast<int>(tables[0]->size());
  }
};

// One side's piece during adaptive recursion; everything inline, no heap.
struct Cell {
  int D = 0;
  int k = 0;
  std::array<Vec, kMaxDim> verts;  // k+1 used
  Vec centroid;
  double radius = 0.0;
  double diameter = 0.0;

  void from_simplex(const Simplex& s) {
    D = s.ambient_dim();
    k = s.dim();
    for (int i = 0; i <= k; ++i) verts[i] = s.vertices[i];
    compute_bounds();
  }

  Simplex to_simplex() const {
    std::vector<Vec> vs(verts.begin(), verts.begin() + k + 1);
    return Simplex(std::move(vs));
  }

  void compute_bounds() {
    centroid = Vec(D);
    for (int i = 0; i <= k; ++i) centroid += verts[i];
    centroid *= 1.0 / (k + 1);
    radius = 0.0;
    diameter = 0.0;
    for (int i = 0; i <= k; ++i) {
      radius = std::max(radius, distance(centroid, verts[i]));
      for (int j = i + 1; j <= k; ++j)
        diameter = std::max(diameter, distance(verts[i], verts[j]));
    }
  }

  // bisect the longest edge; halves cover the cell with the same orientation
  void split(Cell& a, Cell& b) const {
    int bi = 0, bj = 1;
    double best = -1.0;
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const double d = distance(verts[i], verts[j]);
        if (d > best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    a = *this;
    b = *this;
    const Vec mid = (verts[bi] + verts[bj]) * 0.5;
    a.verts[bj] = mid;
    b.verts[bi] = mid;
    a.compute_bounds();
    b.compute_bounds();
  }
};

// world coordinates of the rule's nodes under the cell's affine map,
// node-major: out[i * D + d]
inline void cell_nodes(const Cell& c, const quad::SimplexRule& rule,
                       double* out) {
  double edges[kMaxDim][kMaxDim];  // [j][d]
  for (int j = 0; j < c.k; ++j)
    for (int d = 0; d < c.D; ++d)
      edges[j][d] = c.verts[j + 1][d] - c.verts[0][d];
  const int n = static_cast<int>(rule.flat_weights.size());
  for (int i = 0; i < n; ++i) {
    const double* t = rule.flat_coords.data() + std::size_t(i) * c.k;
    double* x = out + std::size_t(i) * c.D;
    for (int d = 0; d < c.D; ++d) x[d] = c.verts[0][d];
    for (int j = 0; j < c.k; ++j)
      for (int d = 0; d < c.D; ++d) x[d] += t[j] * edges[j][d];
  }
}

// Jacobian minors per (k, partition): out[(k-1) * P + p]
inline void cell_minors(const Cell& c, const PartitionPack& pack, bool primed,
                        double* out) {
  double edges[kMaxDim][kMaxDim];  // [d][j]
  for (int j = 0; j < c.k; ++j)
    for (int d = 0; d < c.D; ++d)
      edges[d][j] = c.verts[j + 1][d] - c.verts[0][d];
  const int m = c.k;
  double mat[kMaxDim][kMaxDim];
  for (int k = 1; k <= pack.D; ++k) {
    const auto& parts = *pack.tables[k - 1];
    for (int p = 0; p < pack.P; ++p) {
      const auto& rows = primed ? parts[p].left : parts[p].right;
      if (m == 0) {
        out[(k - 1) * pack.P + p] = 1.0;
        continue;
      }
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mat[a][b] = edges[rows[a] - 1][b];
      double det = 1.0;
      for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
          if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
        if (piv != col) {
          for (int cc = 0; cc < m; ++cc) std::swap(mat[piv][cc], mat[col][cc]);
          det = -det;
        }
        if (mat[col][col] == 0.0) {
          det = 0.0;
          break;
        }
        det *= mat[col][col];
        for (int r = col + 1; r < m; ++r) {
          const double f = mat[r][col] / mat[col][col];
          for (int cc = col; cc < m; ++cc) mat[r][cc] -= f * mat[col][cc];
        }
      }
      out[(k - 1) * pack.P + p] = det;
    }
  }
}

inline void assemble_kernel_coeff(const PartitionPack& pack,
                                  const double* minors_sig,
                                  const double* minors_tau, double* coeff) {
  for (int k = 1; k <= pack.D; ++k) {
    const auto& parts = *pack.tables[k - 1];
    const double* ms = minors_sig + std::size_t(k - 1) * pack.P;
    const double* mt = minors_tau + std::size_t(k - 1) * pack.P;
    double c = 0.0;
    for (int p = 0; p < pack.P; ++p) c += parts[p].sign * mt[p] * ms[p];
    coeff[k - 1] = (k % 2 == 1) ? c : -c;  // (-1)^(k+1)
  }
}

// sum over node pairs of w_a w_b (coeff . s) / |s|^D with s = x_a - x_b
inline double kernel_sum(int D, const double* nodes_a, const double* wa,
                         int na, const double* nodes_b, const double* wb,
                         int nb, const double* coeff, double eps2,
                         const std::string& entity) {
  double acc = 0.0;
  for (int a = 0; a < na; ++a) {
    const double* xa = nodes_a + std::size_t(a) * D;
    double row = 0.0;
    for (int b = 0; b < nb; ++b) {
      const double* xb = nodes_b + std::size_t(b) * D;
      double r2 = 0.0, num = 0.0;
      for (int d = 0; d < D; ++d) {
        const double s = xa[d] - xb[d];
        r2 += s * s;
        num += coeff[d] * s;
      }
      if (r2 <= eps2) throw SingularProximityError(entity, std::sqrt(r2));
      row += wb[b] * num * inv_pow_r(r2, D);
    }
    acc += wa[a] * row;
  }
  return acc;
}

// Adaptive integrator over cell pairs; owns scratch buffers so the
// recursion never allocates. One instance per worker chunk.
struct PairEngine {
  int D;
  int w_left;
  const quad::SimplexRule* rule_sig;
  const quad::SimplexRule* rule_tau;
  const PartitionPack* pack;
  QuadConfig cfg;
  double eps2;
  const std::string* entity;
  EngineStats* stats = nullptr;

  std::vector<double> nodes_a, nodes_b, minors_a, minors_b;

  PairEngine(int D_, int w, const PartitionPack& pk, const QuadConfig& qc,
             const std::string& label, EngineStats* st)
      : D(D_),
        w_left(w),
        rule_sig(&quad::simplex_rule(D_ - 1 - w, qc.order)),
        rule_tau(&quad::simplex_rule(w, qc.order)),
        pack(&pk),
        cfg(qc),
        eps2(qc.eps_sing * qc.eps_sing),
        entity(&label),
        stats(st) {
    nodes_a.resize(rule_sig->flat_weights.size() * D);
    nodes_b.resize(rule_tau->flat_weights.size() * D);
    minors_a.resize(std::size_t(D) * pack->P);
    minors_b.resize(std::size_t(D) * pack->P);
  }

  double leaf(const Cell& sig, const Cell& tau) {
    cell_nodes(sig, *rule_sig, nodes_a.data());
    cell_nodes(tau, *rule_tau, nodes_b.data());
    cell_minors(sig, *pack, /*primed=*/false, minors_a.data());
    cell_minors(tau, *pack, /*primed=*/true, minors_b.data());
    double coeff[kMaxDim];
    assemble_kernel_coeff(*pack, minors_a.data(), minors_b.data(), coeff);
    if (stats) stats->leaf_pairs.fetch_add(1, std::memory_order_relaxed);
    return kernel_sum(D, nodes_a.data(), rule_sig->flat_weights.data(),
                      static_cast<int>(rule_sig->flat_weights.size()),
                      nodes_b.data(), rule_tau->flat_weights.data(),
                      static_cast<int>(rule_tau->flat_weights.size()), coeff,
                      eps2, *entity);
  }

  bool needs_split(const Cell& sig, const Cell& tau) const {
    const double dist = std::max(
        distance(sig.centroid, tau.centroid) - sig.radius - tau.radius, 1e-30);
    return std::max(sig.diameter, tau.diameter) > cfg.split_ratio * dist &&
           (sig.k > 0 || tau.k > 0);
  }

  double integrate(const Cell& sig, const Cell& tau, int depth) {
    const bool want_split = needs_split(sig, tau);
    if (want_split && depth < cfg.max_depth) {
      if (stats) stats->subdivisions.fetch_add(1, std::memory_order_relaxed);
      bool split_sig = sig.diameter >= tau.diameter;
      if (split_sig && sig.k == 0) split_sig = false;
      if (!split_sig && tau.k == 0) split_sig = true;
      Cell h1, h2;
      if (split_sig) {
        sig.split(h1, h2);
        return integrate(h1, tau, depth + 1) + integrate(h2, tau, depth + 1);
      }
      tau.split(h1, h2);
      return integrate(sig, h1, depth + 1) + integrate(sig, h2, depth + 1);
    }
    if (want_split) {
      // depth-capped: abort if the pair genuinely reaches the singular zone
      const double d = simplex_distance(sig.to_simplex(), tau.to_simplex(),
                                        1e3 * cfg.eps_sing, cfg.eps_sing);
      if (d <= cfg.eps_sing) throw SingularProximityError(*entity, d);
    }
    return leaf(sig, tau);
  }
};

// Base-level data for one chain term: cell plus precomputed node and minor
// arrays, reused by every unsplit pair it participates in.
struct BaseSide {
  Cell cell;
  double coeff = 1.0;
  std::vector<double> nodes;
  std::vector<double> minors;

  BaseSide(const Simplex& s, double coefficient,
           const quad::SimplexRule& rule, const PartitionPack& pack,
           bool primed)
      : coeff(coefficient) {
    cell.from_simplex(s);
    nodes.resize(rule.flat_weights.size() * cell.D);
    minors.resize(std::size_t(pack.D) * pack.P);
    cell_nodes(cell, rule, nodes.data());
    cell_minors(cell, pack, primed, minors.data());
  }
};

/// Deterministic chunked parallel sum: chunk partials are accumulated in
/// chunk order regardless of the thread count.
template <class ChunkFn>
double chunked_parallel_sum(std::size_t n, std::size_t grain, int threads,
                            ChunkFn&& fn) {
  if (n == 0) return 0.0;
  const std::size_t nchunks = (n + grain - 1) / grain;
  int t = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  t = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(t), nchunks));

  std::vector<double> partials(nchunks, 0.0);
  std::exception_ptr error;
  std::mutex error_mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t chunk = next.fetch_add(1);
      if (chunk >= nchunks) return;
      const std::size_t begin = chunk * grain;
      const std::size_t end = std::min(n, begin + grain);
      try {
        partials[chunk] = fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace detail

/// Per-node integrand over a simplex pair at reference coordinates (t, u):
/// the pullback of the reduced (D-1)-form, including its global (-1)^(D-N).
/// Slow reference path; the integrators use the factored form.
inline double pair_integrand(const Simplex& sigma, const Simplex& tau,
                             const double* t, const double* u,
                             double eps_sing = 1e-6) {
  const int D = sigma.ambient_dim();
  const int w_left = tau.dim();
  if (sigma.dim() + tau.dim() != D - 1)
    throw DimensionError("pair_integrand: dim(sigma) + dim(tau) != D - 1");
  const Vec x = quad::map_to_simplex(sigma, t);
  const Vec xp = quad::map_to_simplex(tau, u);
  const Vec s = x - xp;
  const double r2 = s.norm2();
  if (r2 <= eps_sing * eps_sing)
    throw SingularProximityError("pair", std::sqrt(r2));
  double total = 0.0;
  for (int k = 1; k <= D; ++k) {
    const auto& parts = partition_table(D, k, w_left);
    double c = 0.0;
    for (const auto& part : parts)
      c += part.sign * detail::jacobian_minor(tau, part.left) *
           detail::jacobian_minor(sigma, part.right);
    const double gk = s[k - 1] * detail::inv_pow_r(r2, D) / unit_sphere_volume(D);
    total += ((k % 2 == 1) ? c : -c) * gk;
  }
  return (w_left % 2 == 0) ? total : -total;
}

/// U^k_rho(x; S): (-1)^(k+1) sgn(rho) * integral over the skeleton of
/// G_k(x - x') against the rho_l coordinate volume form. Integration over a
/// 0-dimensional skeleton is evaluation.
inline double u_k_rho(const Vec& x, int k, const OrderedPartition& rho,
                      const Chain& skeleton, const QuadConfig& cfg = {},
                      const std::string& label = "S") {
  cfg.validate();
  const int D = x.dim();
  const int w_left = static_cast<int>(rho.left.size());
  if (skeleton.dim() != w_left)
    throw DimensionError("u_k_rho: partition size does not match skeleton dim");
  const double eps2 = cfg.eps_sing * cfg.eps_sing;

  // integrate G_k * minor(rho_l) over each skeleton simplex, adaptively
  // splitting against the evaluation point
  struct Eval {
    const Vec& x;
    int k;
    const std::vector<int>& rows;
    const QuadConfig& cfg;
    const std::string& label;
    int D;
    double eps2;

    double run(const detail::PairSide& tau, int depth) const {
      const double dist = std::max(
          distance(x, tau.centroid) - tau.radius, 1e-30);
      const bool want_split =
          tau.diameter > cfg.split_ratio * dist && tau.simplex.dim() > 0;
      if (want_split && depth < cfg.max_depth) {
        auto [h1, h2] = tau.split(D, tau.simplex.dim(), true, cfg.order);
        return run(h1, depth + 1) + run(h2, depth + 1);
      }
      if (want_split) {
        const double d = simplex_distance(Simplex({x}), tau.simplex,
                                          1e3 * cfg.eps_sing, cfg.eps_sing);
        if (d <= cfg.eps_sing) throw SingularProximityError(label, d);
      }
      const double minor = detail::jacobian_minor(tau.simplex, rows);
      double acc = 0.0;
      for (std::size_t b = 0; b < tau.nodes.size(); ++b) {
        const Vec s = x - tau.nodes[b];
        const double r2 = s.norm2();
        if (r2 <= eps2) throw SingularProximityError(label, std::sqrt(r2));
        acc += tau.weights[b] * s[k - 1] * detail::inv_pow_r(r2, D);
      }
      return acc * minor;
    }
  };

  double total = 0.0;
  for (const ChainTerm& term : skeleton.terms) {
    detail::PairSide tau(term.simplex, D, w_left, /*primed=*/true, cfg.order);
    Eval ev{x, k, rho.left, cfg, label, D, eps2};
    total += term.coeff * ev.run(tau, 0);
  }
  total /= unit_sphere_volume(D);
  const double signed_value = rho.sign * total;
  return (k % 2 == 1) ? signed_value : -signed_value;
}

/// psi_S as an evaluable (N-1)-form: coefficient functions on demand, in the
/// basis of ascending coordinate multi-indices.
class FormField {
 public:
  FormField(Chain skeleton, int D, int N, QuadConfig cfg = {},
            std::string label = "S")
      : skeleton_(std::move(skeleton)),
        D_(D),
        N_(N),
        cfg_(cfg),
        label_(std::move(label)) {
    cfg_.validate();
    if (N_ < 2) throw DimensionError("FormField: N must be >= 2");
    if (skeleton_.dim() != D_ - N_)
      throw DimensionError("FormField: skeleton dimension must be D - N");
    // enumerate ascending (N-1)-subsets of {1..D}
    std::vector<int> pick(N_ - 1);
    for (int i = 0; i < N_ - 1; ++i) pick[i] = i + 1;
    while (true) {
      multi_indices_.push_back(pick);
      int i = N_ - 2;
      while (i >= 0 && pick[i] == D_ - (N_ - 2 - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < N_ - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  const Chain& skeleton() const { return skeleton_; }
  int ambient_dim() const { return D_; }
  int codim() const { return N_; }
  const std::vector<std::vector<int>>& multi_indices() const {
    return multi_indices_;
  }

  /// All coefficients of psi_S at x, aligned with multi_indices().
  std::vector<double> psi_coefficients(const Vec& x) const {
    const int w_left = D_ - N_;
    // A[k-1][p] accumulates integral(G_k * minor(rho_l^p)) over the skeleton
    std::vector<std::vector<double>> acc(D_);
    for (int k = 1; k <= D_; ++k)
      acc[k - 1].assign(partition_table(D_, k, w_left).size(), 0.0);

    for (const ChainTerm& term : skeleton_.terms) {
      detail::PairSide tau(term.simplex, D_, w_left, /*primed=*/true,
                           cfg_.order);
      accumulate(x, tau, 0, static_cast<double>(term.coeff), acc);
    }

    const double inv_area = 1.0 / unit_sphere_volume(D_);
    const double global_sign = (w_left % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> out(multi_indices_.size(), 0.0);
    for (int k = 1; k <= D_; ++k) {
      const auto& parts = partition_table(D_, k, w_left);
      const double k_sign = (k % 2 == 1) ? 1.0 : -1.0;
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const int slot = multi_index_slot(parts[p].right);
        out[slot] +=
            global_sign * k_sign * parts[p].sign * acc[k - 1][p] * inv_area;
      }
    }
    return out;
  }

 private:
  int multi_index_slot(const std::vector<int>& idx) const {
    for (std::size_t i = 0; i < multi_indices_.size(); ++i)
      if (multi_indices_[i] == idx) return static_cast<int>(i);
    throw std::logic_error("multi-index not found");
  }

  void accumulate(const Vec& x, const detail::PairSide& tau, int depth,
                  double coeff, std::vector<std::vector<double>>& acc) const {
    const double dist =
        std::max(distance(x, tau.centroid) - tau.radius, 1e-30);
    const bool want_split =
        tau.diameter > cfg_.split_ratio * dist && tau.simplex.dim() > 0;
    if (want_split && depth < cfg_.max_depth) {
      auto [h1, h2] = tau.split(D_, D_ - N_, true, cfg_.order);
      accumulate(x, h1, depth + 1, coeff, acc);
      accumulate(x, h2, depth + 1, coeff, acc);
      return;
    }
    if (want_split) {
      const double d = simplex_distance(Simplex({x}), tau.simplex,
                                        1e3 * cfg_.eps_sing, cfg_.eps_sing);
      if (d <= cfg_.eps_sing) throw SingularProximityError(label_, d);
    }
    // leaf: per k, integral of G_k (times A_{D-1}); then scatter into the
    // partition slots with this leaf's minors
    double gint[kMaxDim] = {0.0};
    const double eps2 = cfg_.eps_sing * cfg_.eps_sing;
    for (std::size_t b = 0; b < tau.nodes.size(); ++b) {
      const Vec s = x - tau.nodes[b];
      const double r2 = s.norm2();
      if (r2 <= eps2) throw SingularProximityError(label_, std::sqrt(r2));
      const double w = tau.weights[b] * detail::inv_pow_r(r2, D_);
      for (int d = 0; d < D_; ++d) gint[d] += w * s[d];
    }
    for (int k = 1; k <= D_; ++k) {
      const auto& slots = tau.minors[k - 1];
      for (std::size_t p = 0; p < slots.size(); ++p)
        acc[k - 1][p] += coeff * gint[k - 1] * slots[p];
    }
  }

  Chain skeleton_;
  int D_;
  int N_;
  QuadConfig cfg_;
  std::string label_;
  std::vector<std::vector<int>> multi_indices_;
};

/// Engine-wide options for the double integrals.
struct EngineConfig {
  QuadConfig quad;
  int threads = 0;  // 0: hardware concurrency
  EngineStats* stats = nullptr;
};

/// The invariant of a candidate (N-1)-chain against one skeleton cycle:
/// the double integral of the reduced form over candidate x skeleton.
inline double phi_s(const Chain& omega, const Chain& skeleton,
                    const EngineConfig& cfg = {},
                    const std::string& label = "S") {
  cfg.quad.validate();
  if (omega.empty() || skeleton.empty()) return 0.0;
  const int D = omega.ambient_dim();
  if (skeleton.ambient_dim() != D)
    throw DimensionError("phi: candidate and skeleton ambient dims differ");
  const int n_minus_1 = omega.dim();
  const int w_left = skeleton.dim();
  if (n_minus_1 + w_left != D - 1)
    throw DimensionError(
        "phi: dim(candidate) + dim(skeleton) must equal D - 1");
  if (n_minus_1 + 1 < 2) throw DimensionError("phi: N must be >= 2");

  cfg.quad.validate();
  const detail::PartitionPack pack(D, w_left);
  const auto& rule_sig = quad::simplex_rule(D - 1 - w_left, cfg.quad.order);
  const auto& rule_tau = quad::simplex_rule(w_left, cfg.quad.order);

  std::vector<detail::BaseSide> sigma, tau;
  sigma.reserve(omega.terms.size());
  for (const ChainTerm& t : omega.terms)
    sigma.emplace_back(t.simplex, static_cast<double>(t.coeff), rule_sig,
                       pack, /*primed=*/false);
  tau.reserve(skeleton.terms.size());
  for (const ChainTerm& t : skeleton.terms)
    tau.emplace_back(t.simplex, static_cast<double>(t.coeff), rule_tau, pack,
                     /*primed=*/true);

  const std::size_t n_pairs = sigma.size() * tau.size();
  const std::size_t grain =
      std::max<std::size_t>(1, std::min<std::size_t>(1024, n_pairs / 64));
  const double eps2 = cfg.quad.eps_sing * cfg.quad.eps_sing;

  const double sum = detail::chunked_parallel_sum(
      n_pairs, grain, cfg.threads, [&](std::size_t begin, std::size_t end) {
        detail::PairEngine engine(D, w_left, pack, cfg.quad, label, cfg.stats);
        double coeff[kMaxDim];
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
          const detail::BaseSide& a = sigma[i / tau.size()];
          const detail::BaseSide& b = tau[i % tau.size()];
          double value;
          if (engine.needs_split(a.cell, b.cell)) {
            value = engine.integrate(a.cell, b.cell, 0);
          } else {
            // fast path: both sides keep their precomputed base data
            detail::assemble_kernel_coeff(pack, a.minors.data(),
                                          b.minors.data(), coeff);
            if (cfg.stats)
              cfg.stats->leaf_pairs.fetch_add(1, std::memory_order_relaxed);
            value = detail::kernel_sum(
                D, a.nodes.data(), rule_sig.flat_weights.data(),
                static_cast<int>(rule_sig.flat_weights.size()),
                b.nodes.data(), rule_tau.flat_weights.data(),
                static_cast<int>(rule_tau.flat_weights.size()), coeff, eps2,
                label);
          }
          acc += a.coeff * b.coeff * value;
        }
        return acc;
      });

  const double global_sign = (w_left % 2 == 0) ? 1.0 : -1.0;
  return global_sign * sum / unit_sphere_volume(D);
}

/// The m-vector invariant: phi against every component of the skeleton set.
inline Signature phi_vector(const Chain& omega, const SkeletonSet& set,
                            const EngineConfig& cfg = {}) {
  Signature sig;
  sig.values.reserve(set.size());
  for (int i = 0; i < set.size(); ++i) {
    const std::string label =
        i < static_cast<int>(set.labels.size()) ? set.labels[i]
                                                : "S" + std::to_string(i);
    sig.values.push_back(phi_s(omega, set.skeletons[i], cfg, label));
  }
  return sig;
}

}  // namespace homolink
