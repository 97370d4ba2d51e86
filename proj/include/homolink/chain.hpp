#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "homolink/vec.hpp"

namespace homolink {

/// Oriented linear k-simplex embedded in R^D: k+1 ordered vertices.
/// Orientation is the vertex order.
struct Simplex {
  std::vector<Vec> vertices;

  Simplex() = default;
  explicit Simplex(std::vector<Vec> vs) : vertices(std::move(vs)) {
    for (const Vec& v : vertices)
      if (v.dim() != vertices.front().dim())
        throw DimensionError("simplex vertices have mixed dimensions");
  }

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int ambient_dim() const {
    return vertices.empty() ? 0 : vertices.front().dim();
  }

  Vec centroid() const {
    Vec c(ambient_dim());
    for (const Vec& v : vertices) c += v;
    c *= 1.0 / static_cast<double>(vertices.size());
    return c;
  }

  /// Max vertex-pair distance.
  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        d = std::max(d, distance(vertices[i], vertices[j]));
    return d;
  }

  /// Max distance from the centroid to a vertex (bounding-sphere radius).
  double radius() const {
    const Vec c = centroid();
    double r = 0.0;
    for (const Vec& v : vertices) r = std::max(r, distance(c, v));
    return r;
  }
};

/// k-volume of the simplex times k!: sqrt(det(E^T E)) with E the edge matrix.
inline double simplex_edge_volume(const Simplex& s) {
  const int k = s.dim();
  if (k <= 0) return 1.0;
  double gram[kMaxDim][kMaxDim];
  for (int i = 0; i < k; ++i) {
    const Vec ei = s.vertices[i + 1] - s.vertices[0];
    for (int j = 0; j < k; ++j) {
      const Vec ej = s.vertices[j + 1] - s.vertices[0];
      gram[i][j] = dot(ei, ej);
    }
  }
  // Cholesky-free determinant by Gaussian elimination.
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(gram[r][col]) > std::abs(gram[piv][col])) piv = r;
    if (piv != col) {
      for (int c = 0; c < k; ++c) std::swap(gram[piv][c], gram[col][c]);
      det = -det;
    }
    if (gram[col][col] == 0.0) return 0.0;
    det *= gram[col][col];
    for (int r = col + 1; r < k; ++r) {
      const double f = gram[r][col] / gram[col][col];
      for (int c = col; c < k; ++c) gram[r][c] -= f * gram[col][c];
    }
  }
  return det > 0.0 ? std::sqrt(det) : 0.0;
}

/// Affine-degeneracy test: k-volume below eps_degen = 1e-12 * diameter^k.
inline bool simplex_is_degenerate(const Simplex& s) {
  const int k = s.dim();
  if (k <= 0) return false;
  const double dia = s.diameter();
  if (dia == 0.0) return true;
  double scale = 1.0;
  for (int i = 0; i < k; ++i) scale *= dia;
  return simplex_edge_volume(s) <= 1e-12 * scale;
}

struct ChainTerm {
  Simplex simplex;
  std::int64_t coeff = 1;
};

/// Formal integer combination of oriented k-simplices in R^D.
/// Immutable by convention once built; safe to share across threads.
struct Chain {
  std::vector<ChainTerm> terms;

  Chain() = default;
  explicit Chain(std::vector<ChainTerm> ts) : terms(std::move(ts)) {}

  bool empty() const { return terms.empty(); }

  /// Common simplex dimension, or -1 for the empty chain.
  int dim() const { return terms.empty() ? -1 : terms.front().simplex.dim(); }
  int ambient_dim() const {
    return terms.empty() ? 0 : terms.front().simplex.ambient_dim();
  }

  Chain negated() const {
    Chain out = *this;
    for (ChainTerm& t : out.terms) t.coeff = -t.coeff;
    return out;
  }

  friend Chain operator+(const Chain& a, const Chain& b) {
    Chain out = a;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return out;
  }
};

namespace detail {

// Key for geometric simplex identity: vertices sorted by coordinate bit
// pattern, plus the parity of the sorting permutation. Exact bit comparison
// is intentional; samplers reuse shared vertex points.
struct FacetKey {
  std::vector<Vec> sorted_vertices;
  int parity = +1;

  explicit FacetKey(const std::vector<Vec>& vs) {
    const int n = static_cast<int>(vs.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    auto bit_less = [&vs](int a, int b) {
      const Vec& va = vs[a];
      const Vec& vb = vs[b];
      return std::memcmp(va.data(), vb.data(), sizeof(double) * va.dim()) < 0;
    };
    std::sort(order.begin(), order.end(), bit_less);
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (order[i] > order[j]) ++inversions;
    parity = (inversions % 2 == 0) ? +1 : -1;
    sorted_vertices.reserve(n);
    for (int i : order) sorted_vertices.push_back(vs[i]);
  }

  bool operator<(const FacetKey& o) const {
    const std::size_t n = sorted_vertices.size();
    if (n != o.sorted_vertices.size()) return n < o.sorted_vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec& a = sorted_vertices[i];
      const Vec& b = o.sorted_vertices[i];
      const int c = std::memcmp(a.data(), b.data(), sizeof(double) * a.dim());
      if (c != 0) return c < 0;
    }
    return false;
  }
};

}  // namespace detail

/// Simplicial boundary with exact integer cancellation. Facets are merged
/// under sorted-vertex identity with the orientation sign of the sort, so
/// boundary(boundary(c)) is the empty chain exactly.
inline Chain boundary(const Chain& c) {
  if (!c.empty() && c.dim() < 1)
    throw DimensionError("boundary: chain dimension must be >= 1");

  std::map<detail::FacetKey, std::pair<Simplex, std::int64_t>> acc;
  for (const ChainTerm& term : c.terms) {
    const auto& vs = term.simplex.vertices;
    const int n = static_cast<int>(vs.size());
    for (int drop = 0; drop < n; ++drop) {
      std::vector<Vec> face;
      face.reserve(n - 1);
      for (int i = 0; i < n; ++i)
        if (i != drop) face.push_back(vs[i]);
      const std::int64_t sign = (drop % 2 == 0) ? 1 : -1;
      detail::FacetKey key(face);
      auto [it, inserted] = acc.try_emplace(
          key, std::pair<Simplex, std::int64_t>{Simplex{}, 0});
      if (inserted) {
        // store the canonical (sorted) orientation
        it->second.first = Simplex(key.sorted_vertices);
      }
      it->second.second += sign * key.parity * term.coeff;
    }
  }

  Chain out;
  for (auto& [key, entry] : acc)
    if (entry.second != 0)
      out.terms.push_back(ChainTerm{std::move(entry.first), entry.second});
  return out;
}

/// Min distance between two chains, or a tight lower bound once it exceeds
/// `cutoff` (the search prunes pairs that cannot get below the best found).
/// Returns early once the distance is known to be <= `stop_below`.
/// Works by recursive bisection with bounding-sphere bounds.
inline double chain_distance(const Chain& a, const Chain& b,
                             double cutoff = 1e300,
                             double stop_below = -1.0) {
  struct Piece {
    Simplex s;
    Vec c;
    double r;
    explicit Piece(Simplex sx) : s(std::move(sx)), c(s.centroid()), r(s.radius()) {}
  };
  auto split = [](const Piece& p) {
    // bisect the longest edge
    const auto& vs = p.s.vertices;
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
    Vec mid = (vs[bi] + vs[bj]) * 0.5;
    std::vector<Vec> va = vs, vb = vs;
    va[bj] = mid;
    vb[bi] = mid;
    return std::pair<Piece, Piece>(Piece(Simplex(std::move(va))),
                                   Piece(Simplex(std::move(vb))));
  };

  double best = cutoff;
  // (pair, lower bound) work stack
  struct Item {
    Piece a, b;
    double lb;
  };
  std::vector<Item> stack;
  for (const ChainTerm& ta : a.terms)
    for (const ChainTerm& tb : b.terms) {
      Piece pa(ta.simplex), pb(tb.simplex);
      const double lb = distance(pa.c, pb.c) - pa.r - pb.r;
      best = std::min(best, distance(pa.c, pb.c));
      stack.push_back(Item{std::move(pa), std::move(pb), lb});
    }

  int iterations = 0;
  const int max_iterations = 200000;
  while (!stack.empty() && iterations++ < max_iterations) {
    if (best <= stop_below) return best;
    Item it = std::move(stack.back());
    stack.pop_back();
    if (it.lb >= best) continue;
    // refine: min vertex-pair distance is an upper bound
    for (const Vec& va : it.a.s.vertices)
      for (const Vec& vb : it.b.s.vertices)
        best = std::min(best, distance(va, vb));
    if (it.lb >= best || (it.a.r <= 1e-15 && it.b.r <= 1e-15)) continue;
    const bool split_a = it.a.r >= it.b.r;
    auto [p1, p2] = split(split_a ? it.a : it.b);
    for (Piece* child : {&p1, &p2}) {
      const Piece& other = split_a ? it.b : it.a;
      const double lb = distance(child->c, other.c) - child->r - other.r;
      if (lb < best)
        stack.push_back(split_a ? Item{*child, other, lb}
                                : Item{other, *child, lb});
    }
  }
  return best;
}

inline double simplex_distance(const Simplex& a, const Simplex& b,
                               double cutoff = 1e300,
                               double stop_below = -1.0) {
  Chain ca, cb;
  ca.terms.push_back(ChainTerm{a, 1});
  cb.terms.push_back(ChainTerm{b, 1});
  return chain_distance(ca, cb, cutoff, stop_below);
}

// ---------------------------------------------------------------------------
// Mesh interchange: plain text, whitespace separated.
//   line 1:  D k m          (ambient dim, simplex dim, vertex count)
//   m lines: D coordinates
//   rest:    k+1 vertex indices (0-based) and an integer coefficient
// Coordinates round-trip at 17 significant digits.
// ---------------------------------------------------------------------------

inline void write_mesh(std::ostream& os, const Chain& c) {
  const int D = c.ambient_dim();
  const int k = c.dim();

  std::map<detail::FacetKey, int> ids;
  std::vector<const Vec*> verts;
  auto vertex_id = [&](const Vec& v) {
    detail::FacetKey key({v});
    auto [it, inserted] = ids.try_emplace(key, static_cast<int>(verts.size()));
    if (inserted) verts.push_back(&it->first.sorted_vertices.front());
    return it->second;
  };

  std::vector<std::vector<int>> simplex_rows;
  std::vector<std::int64_t> coeffs;
  for (const ChainTerm& t : c.terms) {
    std::vector<int> row;
    for (const Vec& v : t.simplex.vertices) row.push_back(vertex_id(v));
    simplex_rows.push_back(std::move(row));
    coeffs.push_back(t.coeff);
  }

  os << D << ' ' << k << ' ' << verts.size() << '\n';
  char buf[64];
  for (const Vec* v : verts) {
    for (int i = 0; i < D; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", (*v)[i]);
      os << (i ? " " : "") << buf;
    }
    os << '\n';
  }
  for (std::size_t s = 0; s < simplex_rows.size(); ++s) {
    for (int id : simplex_rows[s]) os << id << ' ';
    os << coeffs[s] << '\n';
  }
}

inline Chain read_mesh(std::istream& is) {
  int D = 0, k = 0;
  std::size_t m = 0;
  if (!(is >> D >> k >> m)) throw std::runtime_error("mesh: bad header");
  if (D < 1 || D > kMaxDim || k < 0 || k > D)
    throw std::runtime_error("mesh: header out of range");
  std::vector<Vec> verts;
  verts.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec v(D);
    for (int d = 0; d < D; ++d)
      if (!(is >> v[d]))
        throw std::runtime_error("mesh: truncated vertex " + std::to_string(i));
    verts.push_back(v);
  }
  Chain out;
  while (true) {
    std::vector<Vec> vs;
    vs.reserve(k + 1);
    long long first = 0;
    if (!(is >> first)) break;
    if (first < 0 || static_cast<std::size_t>(first) >= m)
      throw std::runtime_error("mesh: vertex index out of range");
    vs.push_back(verts[static_cast<std::size_t>(first)]);
    for (int i = 1; i <= k; ++i) {
      long long idx = 0;
      if (!(is >> idx) || idx < 0 || static_cast<std::size_t>(idx) >= m)
        throw std::runtime_error("mesh: bad simplex line");
      vs.push_back(verts[static_cast<std::size_t>(idx)]);
    }
    long long coeff = 0;
    if (!(is >> coeff)) throw std::runtime_error("mesh: missing coefficient");
    if (coeff != 0)
      out.terms.push_back(ChainTerm{Simplex(std::move(vs)), coeff});
  }
  return out;
}

inline std::string mesh_to_string(const Chain& c) {
  std::ostringstream os;
  write_mesh(os, c);
  return os.str();
}

inline Chain mesh_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_mesh(is);
}

}  // namespace homolink
