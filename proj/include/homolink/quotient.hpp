#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "homolink/planner.hpp"

// Homology classes of relative cycles in (R^D - skeletons, L): signatures of
// cycles lying inside the collapsed subspace L form an integer lattice Q;
// two path signatures represent the same relative class iff they differ by
// a lattice element.

namespace homolink {

/// Integer lattice of signatures of L-cycles. The basis is kept in integer
/// row-echelon form (unimodular row reduction), so rational elimination plus
/// a coefficient integrality check decides membership.
struct QLattice {
  int m = 0;                                   // signature length
  std::vector<std::vector<std::int64_t>> basis;  // independent generators
  double eps_q = 0.05;

  bool trivial() const { return basis.empty(); }
  int rank() const { return static_cast<int>(basis.size()); }
};

namespace detail {

// Unimodular row reduction of integer vectors: result spans the same
// lattice, is linearly independent, and in echelon form.
inline std::vector<std::vector<std::int64_t>> lattice_row_reduce(
    std::vector<std::vector<std::int64_t>> rows, int m) {
  // drop zero rows up front
  std::erase_if(rows, [](const std::vector<std::int64_t>& r) {
    for (std::int64_t v : r)
      if (v != 0) return false;
    return true;
  });
  std::size_t pivot_row = 0;
  for (int col = 0; col < m && pivot_row < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][col] != 0 &&
            (best == rows.size() ||
             std::abs(rows[r][col]) < std::abs(rows[best][col])))
          best = r;
      if (best == rows.size()) break;  // column exhausted
      std::swap(rows[pivot_row], rows[best]);
      bool nonzero_below = false;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        const std::int64_t q = rows[r][col] / rows[pivot_row][col];
        for (int c = 0; c < m; ++c) rows[r][c] -= q * rows[pivot_row][c];
        if (rows[r][col] != 0) nonzero_below = true;
      }
      if (!nonzero_below) {
        if (rows[pivot_row][col] < 0)
          for (int c = 0; c < m; ++c) rows[pivot_row][c] = -rows[pivot_row][c];
        ++pivot_row;
        break;
      }
    }
  }
  // remove rows that reduced to zero
  std::erase_if(rows, [](const std::vector<std::int64_t>& r) {
    for (std::int64_t v : r)
      if (v != 0) return false;
    return true;
  });
  return rows;
}

// Least-squares coefficients of v on the lattice basis (basis is
// independent; small dense normal equations).
inline std::vector<double> lattice_coefficients(const QLattice& q,
                                                const double* v) {
  const int r = q.rank();
  std::vector<double> gram(r * r, 0.0), rhs(r, 0.0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      double s = 0.0;
      for (int c = 0; c < q.m; ++c)
        s += static_cast<double>(q.basis[i][c]) *
             static_cast<double>(q.basis[j][c]);
      gram[i * r + j] = s;
    }
    double s = 0.0;
    for (int c = 0; c < q.m; ++c)
      s += static_cast<double>(q.basis[i][c]) * v[c];
    rhs[i] = s;
  }
  // Gaussian elimination with partial pivoting
  for (int col = 0; col < r; ++col) {
    int piv = col;
    for (int row = col + 1; row < r; ++row)
      if (std::abs(gram[row * r + col]) > std::abs(gram[piv * r + col]))
        piv = row;
    if (piv != col) {
      for (int c = 0; c < r; ++c)
        std::swap(gram[piv * r + c], gram[col * r + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int row = col + 1; row < r; ++row) {
      const double f = gram[row * r + col] / gram[col * r + col];
      for (int c = col; c < r; ++c) gram[row * r + c] -= f * gram[col * r + c];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<double> lambda(r, 0.0);
  for (int row = r - 1; row >= 0; --row) {
    double s = rhs[row];
    for (int c = row + 1; c < r; ++c) s -= gram[row * r + c] * lambda[c];
    lambda[row] = s / gram[row * r + row];
  }
  return lambda;
}

// round half toward zero, so the canonical residue is idempotent
inline std::int64_t round_half_to_zero(double x) {
  const double r = std::round(x);
  if (std::abs(std::abs(x - std::trunc(x)) - 0.5) == 0.0)
    return static_cast<std::int64_t>(std::trunc(x));
  return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// Canonical residue: v minus the rounded projection onto the Q basis.
inline Signature q_reduce(const Signature& v, const QLattice& q) {
  if (q.trivial()) return v;
  const auto lambda = detail::lattice_coefficients(q, v.values.data());
  Signature out = v;
  for (int i = 0; i < q.rank(); ++i) {
    const std::int64_t z = detail::round_half_to_zero(lambda[i]);
    if (z == 0) continue;
    for (int c = 0; c < q.m; ++c)
      out.values[c] -= static_cast<double>(z * q.basis[i][c]);
  }
  return out;
}

/// True iff v lies within eps of an integer combination of the basis.
inline bool q_membership(const Signature& v, const QLattice& q,
                         double eps_override = -1.0) {
  const double eps = eps_override >= 0.0 ? eps_override : q.eps_q;
  Signature residue = q_reduce(v, q);
  for (double c : residue.values)
    if (std::abs(c) > eps) return false;
  return true;
}

/// Build the lattice from signatures of generator cycles of L. Each
/// signature must be within eps_int of an integer vector (they are closed
/// cycles); the rounded vectors are reduced to an independent basis.
inline QLattice q_lattice_from_signatures(const std::vector<Signature>& sigs,
                                          int m, double eps_int = 0.05,
                                          double eps_q = 0.05) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const Signature& s : sigs) {
    if (s.size() != m)
      throw DimensionError("q_lattice: signature length mismatch");
    if (s.integer_deviation() > eps_int)
      throw std::invalid_argument(
          "q_lattice: generator cycle signature is not integral");
    std::vector<std::int64_t> row(m);
    for (int c = 0; c < m; ++c)
      row[c] = static_cast<std::int64_t>(std::llround(s[c]));
    rows.push_back(std::move(row));
  }
  QLattice q;
  q.m = m;
  q.eps_q = eps_q;
  q.basis = detail::lattice_row_reduce(std::move(rows), m);
  return q;
}

/// Subspace of the scene destined to be collapsed: a cell predicate plus
/// optional generator loops for Q.
struct SubspaceSpec {
  std::vector<Box> boxes;
  std::vector<std::vector<Vec>> generator_loops;
  bool auto_generators = false;
  double eps_w_scale = 1e-6;  // zero-cost stand-in for edges inside L

  bool contains(const Vec& p) const {
    for (const Box& b : boxes)
      if (b.contains(p)) return true;
    return false;
  }
};

/// Per-vertex membership mask for L.
inline std::vector<char> subspace_mask(const GridGraph& g,
                                       const SubspaceSpec& spec) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    mask[v] = spec.contains(g.position(v)) ? 1 : 0;
  return mask;
}

/// Q from the fundamental cycles of the L-subgraph: a BFS spanning forest
/// plus one cycle per non-tree edge, signatures rounded and reduced.
inline QLattice q_lattice_from_subgraph(const GridGraph& g,
                                        const EdgeSignatureCache& cache,
                                        const std::vector<char>& in_L,
                                        double eps_int = 0.05,
                                        double eps_q = 0.05) {
  const int m = cache.components();
  const int n = g.vertex_count();
  std::vector<int> parent(n, -2);  // -2: unseen, -1: root
  std::vector<std::vector<double>> p(n);

  std::vector<Signature> cycle_sigs;
  for (int root = 0; root < n; ++root) {
    if (!in_L[root] || parent[root] != -2) continue;
    parent[root] = -1;
    p[root].assign(m, 0.0);
    std::queue<int> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      g.for_each_neighbor(v, [&](int u) {
        if (!in_L[u]) return;
        if (parent[u] == -2) {
          parent[u] = v;
          p[u] = p[v];
          cache.accumulate(v, u, p[u].data());
          frontier.push(u);
        } else if (u > v) {
          // non-tree edge: fundamental cycle root->v->u->root
          Signature sig(std::vector<double>(m, 0.0));
          for (int c = 0; c < m; ++c) sig[c] = p[v][c] - p[u][c];
          cache.accumulate(v, u, sig.values.data());
          if (sig.integer_deviation() > eps_int)
            throw std::invalid_argument(
                "q_lattice: L-subgraph cycle signature is not integral");
          bool zero = true;
          for (int c = 0; c < m; ++c)
            if (std::llround(sig[c]) != 0) zero = false;
          if (!zero) cycle_sigs.push_back(std::move(sig));
        }
      });
    }
  }
  return q_lattice_from_signatures(cycle_sigs, m, eps_int, eps_q);
}

namespace detail {

struct QIdentity {
  const QLattice* q;
  double eps_key;
  int m;
  bool same(const double* a, const double* b) const {
    Signature diff(std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) diff[i] = a[i] - b[i];
    return q_membership(diff, *q, eps_key);
  }
  Signature canonical(const Signature& s) const { return q_reduce(s, *q); }
};

}  // namespace detail

/// Mean metric edge weight, the reference for eps_w.
inline double mean_edge_weight(const GridGraph& g) {
  if (g.edges().empty()) return 1.0;
  double s = 0.0;
  for (const auto& [u, v] : g.edges()) s += g.edge_weight(u, v);
  return s / static_cast<double>(g.edges().size());
}

/// Search over the quotient-augmented graph: vertices {v, c} identified
/// whenever signatures differ by a lattice element; edges inside L carry the
/// small stand-in weight. Dijkstra (zero heuristic) keeps the cost order
/// sound despite the near-zero region. Returns the first k classes of
/// (R^D - skeletons)/L; signatures are canonical residues.
inline SearchOutcome quotient_augmented_search(
    const GridGraph& g, const EdgeSignatureCache& cache, const QLattice& q,
    const std::vector<char>& in_L, int start, int goal_in_L, int k,
    const SearchOptions& opts = {}, double eps_w_scale = 1e-6) {
  bool l_nonempty = false;
  for (char c : in_L)
    if (c) l_nonempty = true;
  if (l_nonempty && !in_L[goal_in_L])
    throw std::invalid_argument("quotient search: goal must lie in L");
  detail::QIdentity identity{&q, opts.eps_key, cache.components()};
  const double eps_w = eps_w_scale * mean_edge_weight(g);
  // without a collapsed region every edge keeps its metric weight, so the
  // Euclidean heuristic stays admissible; with one, fall back to Dijkstra
  const Vec goal_pos = g.position(goal_in_L);
  auto heuristic = [&g, &goal_pos, l_nonempty](int v) {
    return l_nonempty ? 0.0 : distance(g.position(v), goal_pos);
  };
  return detail::augmented_best_first(
      g, cache, start, goal_in_L, SearchMode::enumerate(k), opts, identity,
      [&](int u, int v) {
        return (l_nonempty && in_L[u] && in_L[v]) ? eps_w
                                                  : g.edge_weight(u, v);
      },
      heuristic, [](int) { return true; });
}

/// Two-phase variant whose trajectories stay connected outside L.
/// Phase 1: Dijkstra inside the L-subgraph from the goal, recording the
/// signature p(v) of the tree path goal -> v. Phase 2: Dijkstra in the
/// complement from the start, terminating on boundary-of-L vertices, with
/// boundary states identified when (c - p(v')) - (cbar - p(v'')) lies in Q.
inline SearchOutcome connected_quotient_search(
    const GridGraph& g, const EdgeSignatureCache& cache, const QLattice& q,
    const std::vector<char>& in_L, int start, int goal_in_L, int k,
    const SearchOptions& opts = {}, double eps_w_scale = 1e-6) {
  const int m = cache.components();
  const int n = g.vertex_count();
  if (in_L.empty() || !in_L[goal_in_L])
    throw std::invalid_argument("connected quotient search: goal must be in L");
  if (in_L[start])
    throw std::invalid_argument(
        "connected quotient search: start must lie outside L");
  const double eps_w = eps_w_scale * mean_edge_weight(g);

  // ---- phase 1: tree over the L-subgraph from the goal
  std::vector<double> g1(n, -1.0);
  std::vector<int> parent1(n, -1);
  std::vector<std::vector<double>> p(n);
  {
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    g1[goal_in_L] = 0.0;
    p[goal_in_L].assign(m, 0.0);
    open.push({0.0, goal_in_L});
    std::vector<char> settled(n, 0);
    while (!open.empty()) {
      const auto [dist, v] = open.top();
      open.pop();
      if (settled[v]) continue;
      settled[v] = 1;
      g.for_each_neighbor(v, [&](int u) {
        if (!in_L[u] || settled[u]) return;
        const double nd = dist + eps_w;
        if (g1[u] < 0.0 || nd < g1[u]) {
          g1[u] = nd;
          parent1[u] = v;
          p[u] = p[v];
          cache.accumulate(v, u, p[u].data());
          open.push({nd, u});
        }
      });
    }
  }
  if (g1[goal_in_L] < 0.0)
    throw std::invalid_argument("connected quotient search: L unreachable");

  // ---- phase 2: augmented Dijkstra outside L, stopping at the boundary
  struct Node {
    int vertex;
    int parent;
    double g;
  };
  std::vector<Node> arena;
  std::vector<double> sigs;
  auto sig_of = [&](int node) { return sigs.data() + std::size_t(node) * m; };

  struct OpenEntry {
    double f;
    int node;
  };
  auto after = [&](const OpenEntry& a, const OpenEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.node > b.node;
  };
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(after)> open(
      after);
  std::unordered_map<int, std::vector<int>> closed;
  detail::L1Identity plain{opts.eps_key, m};
  detail::QIdentity quotient_id{&q, opts.eps_key, m};

  auto is_closed = [&](int vertex, const double* c) {
    const auto it = closed.find(vertex);
    if (it == closed.end()) return false;
    for (int node : it->second)
      if (plain.same(sig_of(node), c)) return true;
    return false;
  };

  arena.push_back(Node{start, -1, 0.0});
  sigs.resize(m, 0.0);
  open.push(OpenEntry{0.0, 0});

  SearchOutcome outcome;
  std::vector<Signature> found_keys;  // trajectory signatures (c - p(v))
  std::vector<double> scratch(m);

  while (!open.empty() &&
         static_cast<int>(outcome.classes.size()) < k) {
    const OpenEntry top = open.top();
    open.pop();
    const Node node = arena[top.node];
    if (is_closed(node.vertex, sig_of(top.node))) continue;
    closed[node.vertex].push_back(top.node);
    ++outcome.expansions;
    if (outcome.expansions >= opts.node_budget) {
      outcome.budget_exhausted = true;
      break;
    }

    if (in_L[node.vertex]) {
      // boundary reached: full trajectory signature is c - p(v)
      Signature full(std::vector<double>(m, 0.0));
      for (int c = 0; c < m; ++c)
        full[c] = sig_of(top.node)[c] - p[node.vertex][c];
      bool known = false;
      for (const Signature& kk : found_keys)
        if (quotient_id.same(full.values.data(), kk.values.data()))
          known = true;
      if (!known) {
        found_keys.push_back(full);
        ClassResult result;
        result.raw_signature = full;
        result.signature = q_reduce(full, q);
        result.cost = node.g + g1[node.vertex];
        result.rank = static_cast<int>(outcome.classes.size()) + 1;
        for (int nd = top.node; nd >= 0; nd = arena[nd].parent)
          result.path.push_back(arena[nd].vertex);
        std::reverse(result.path.begin(), result.path.end());
        // append the in-L tree path back to the goal
        for (int v = parent1[node.vertex]; v >= 0; v = parent1[v])
          result.path.push_back(v);
        outcome.classes.push_back(std::move(result));
      }
      continue;  // boundary vertices are terminals, never expanded
    }

    // copy before expanding: pushes reallocate the signature arena
    const std::vector<double> c(sig_of(top.node), sig_of(top.node) + m);
    g.for_each_neighbor(node.vertex, [&](int u) {
      // stay in the complement, except for final hops onto the boundary
      if (in_L[u] && g1[u] < 0.0) return;  // L component without the goal
      for (int i = 0; i < m; ++i) scratch[i] = c[i];
      cache.accumulate(node.vertex, u, scratch.data());
      if (is_closed(u, scratch.data())) return;
      const int id = static_cast<int>(arena.size());
      arena.push_back(Node{u, top.node, node.g + g.edge_weight(node.vertex, u)});
      sigs.insert(sigs.end(), scratch.begin(), scratch.end());
      open.push(OpenEntry{arena[id].g, id});
    });
  }
  return outcome;
}

}  // namespace homolink
