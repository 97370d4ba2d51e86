#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homolink/vec.hpp"

namespace homolink {

/// Axis-aligned box, used for grid bounds, blocked regions and subspace
/// membership.
struct Box {
  Vec min, max;

  bool contains(const Vec& p) const {
    for (int d = 0; d < p.dim(); ++d)
      if (p[d] < min[d] || p[d] > max[d]) return false;
    return true;
  }
};

/// Uniform grid over a D-box with one vertex per free cell and edges to all
/// 3^D - 1 neighboring cells (8-connected in 2D, 26-connected in 3D).
/// Edge weight is the Euclidean distance between cell centers.
class GridGraph {
 public:
  GridGraph(Vec bounds_min, Vec bounds_max, std::vector<int> resolution,
            const std::function<bool(const Vec&)>& blocked)
      : bmin_(bounds_min), bmax_(bounds_max), res_(std::move(resolution)) {
    D_ = bmin_.dim();
    if (bmax_.dim() != D_ || static_cast<int>(res_.size()) != D_)
      throw DimensionError("grid: bounds/resolution dimension mismatch");
    std::size_t cells = 1;
    for (int d = 0; d < D_; ++d) {
      if (res_[d] < 2)
        throw std::invalid_argument("grid: resolution must be >= 2 per axis");
      if (!(bmax_[d] > bmin_[d]))
        throw std::invalid_argument("grid: empty bounds");
      cells *= static_cast<std::size_t>(res_[d]);
    }
    strides_.assign(D_, 1);
    for (int d = D_ - 2; d >= 0; --d)
      strides_[d] = strides_[d + 1] * static_cast<std::size_t>(res_[d + 1]);

    vertex_of_cell_.assign(cells, -1);
    std::vector<int> coords(D_, 0);
    for (std::size_t flat = 0; flat < cells; ++flat) {
      const Vec center = cell_center(coords);
      if (blocked == nullptr || !blocked(center)) {
        vertex_of_cell_[flat] = static_cast<std::int64_t>(positions_.size());
        positions_.push_back(center);
        cell_of_vertex_.push_back(flat);
      }
      // advance coords, last axis fastest
      for (int d = D_ - 1; d >= 0; --d) {
        if (++coords[d] < res_[d]) break;
        coords[d] = 0;
      }
    }

    // neighbor offsets in deterministic lexicographic order
    std::vector<int> off(D_, -1);
    while (true) {
      bool zero = true;
      for (int d = 0; d < D_; ++d)
        if (off[d] != 0) zero = false;
      if (!zero) offsets_.push_back(off);
      int d = D_ - 1;
      while (d >= 0 && off[d] == 1) off[d--] = -1;
      if (d < 0) break;
      ++off[d];
    }

    // undirected edge list (u < v)
    for (int v = 0; v < vertex_count(); ++v) {
      for (const auto& o : offsets_) {
        const int u = neighbor(v, o);
        if (u > v) edges_.emplace_back(v, u);
      }
    }
  }

  int dim() const { return D_; }
  int vertex_count() const { return static_cast<int>(positions_.size()); }
  const Vec& position(int v) const { return positions_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Vec& bounds_min() const { return bmin_; }
  const Vec& bounds_max() const { return bmax_; }
  const std::vector<int>& resolution() const { return res_; }

  Vec cell_center(const std::vector<int>& coords) const {
    Vec c(D_);
    for (int d = 0; d < D_; ++d)
      c[d] = bmin_[d] +
             (bmax_[d] - bmin_[d]) * (coords[d] + 0.5) / res_[d];
    return c;
  }

  std::vector<int> cell_coords(int v) const {
    std::size_t flat = cell_of_vertex_[v];
    std::vector<int> coords(D_);
    for (int d = D_ - 1; d >= 0; --d) {
      coords[d] = static_cast<int>(flat % static_cast<std::size_t>(res_[d]));
      flat /= static_cast<std::size_t>(res_[d]);
    }
    return coords;
  }

  /// Neighbor vertex across `offset`, or -1 when outside or blocked.
  int neighbor(int v, const std::vector<int>& offset) const {
    const std::size_t flat = cell_of_vertex_[v];
    std::size_t target = 0;
    for (int d = 0; d < D_; ++d) {
      const std::size_t stride = strides_[d];
      const int c = static_cast<int>((flat / stride) % res_[d]);
      const int nc = c + offset[d];
      if (nc < 0 || nc >= res_[d]) return -1;
      target += static_cast<std::size_t>(nc) * stride;
    }
    return static_cast<int>(vertex_of_cell_[target]);
  }

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    for (const auto& o : offsets_) {
      const int u = neighbor(v, o);
      if (u >= 0) f(u);
    }
  }

  double edge_weight(int u, int v) const {
    return distance(positions_[u], positions_[v]);
  }

  /// Vertex whose cell contains the point; throws when outside or blocked.
  int vertex_at_point(const Vec& p) const {
    std::size_t flat = 0;
    for (int d = 0; d < D_; ++d) {
      if (p[d] < bmin_[d] || p[d] > bmax_[d])
        throw std::invalid_argument("grid: point outside bounds");
      int c = static_cast<int>((p[d] - bmin_[d]) / (bmax_[d] - bmin_[d]) *
                               res_[d]);
      if (c == res_[d]) --c;
      flat = flat * res_[d] + static_cast<std::size_t>(c);
    }
    const std::int64_t v = vertex_of_cell_[flat];
    if (v < 0)
      throw std::invalid_argument("grid: point lies in a blocked cell");
    return static_cast<int>(v);
  }

 private:
  int D_;
  Vec bmin_, bmax_;
  std::vector<int> res_;
  std::vector<std::size_t> strides_;
  std::vector<Vec> positions_;
  std::vector<std::int64_t> vertex_of_cell_;
  std::vector<std::size_t> cell_of_vertex_;
  std::vector<std::vector<int>> offsets_;
  std::vector<std::pair<int, int>> edges_;
};

/// Standard scene construction: blocked cells from a box list.
inline GridGraph build_grid_graph(const Vec& bmin, const Vec& bmax,
                                  const std::vector<int>& res,
                                  const std::vector<Box>& blocked_boxes) {
  auto blocked = [&blocked_boxes](const Vec& center) {
    for (const Box& b : blocked_boxes)
      if (b.contains(center)) return true;
    return false;
  };
  return GridGraph(bmin, bmax, res, blocked);
}

}  // namespace homolink
