#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "homolink/chain.hpp"

namespace homolink {

/// Disjoint union of the skeleton cycles S_1 ... S_m, each a closed
/// (D-N)-chain. Component order fixes the signature component order.
struct SkeletonSet {
  std::vector<Chain> skeletons;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(skeletons.size()); }
};

/// A point skeleton: single 0-simplex with unit coefficient.
inline Chain make_point_chain(const Vec& p, int orientation = +1) {
  Chain c;
  c.terms.push_back(ChainTerm{Simplex({p}), orientation});
  return c;
}

/// Oriented 1-chain through `points`; closes back to the first point when
/// `closed` is set.
inline Chain sample_polyline_loop(const std::vector<Vec>& points, bool closed,
                                  int orientation = +1) {
  if (points.size() < 2)
    throw std::invalid_argument("polyline: need at least 2 points");
  const std::size_t n = points.size();
  Chain c;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (points[i] == points[i + 1])
      throw std::invalid_argument("polyline: duplicate consecutive point at " +
                                  std::to_string(i));
    c.terms.push_back(
        ChainTerm{Simplex({points[i], points[i + 1]}), orientation});
  }
  if (closed) {
    if (points[n - 1] == points[0])
      throw std::invalid_argument("polyline: closing edge has zero length");
    c.terms.push_back(ChainTerm{Simplex({points[n - 1], points[0]}), orientation});
  }
  return c;
}

/// Regular n-gon approximation of a circle in the plane of two 1-based axes.
inline Chain sample_circle(double radius, int D, int axis_u, int axis_v,
                           const Vec& center, int segments,
                           int orientation = +1) {
  if (segments < 3) throw std::invalid_argument("circle: need >= 3 segments");
  std::vector<Vec> pts;
  pts.reserve(segments);
  for (int i = 0; i < segments; ++i) {
    const double a = 2.0 * std::numbers::pi * i / segments;
    Vec p = center.dim() == D ? center : Vec(D);
    p[axis_u - 1] += radius * std::cos(a);
    p[axis_v - 1] += radius * std::sin(a);
    pts.push_back(p);
  }
  return sample_polyline_loop(pts, /*closed=*/true, orientation);
}

/// Triangulated 2-sphere of radius R_C in the plane of three 1-based axes,
/// embedded in R^D and shifted by `offset`. Spherical coordinates
///   x_a = R cos(theta) cos(phi), x_b = R cos(theta) sin(phi),
///   x_c = R sin(theta),
/// theta in [-pi/2, pi/2] with n_theta latitude bands, phi with n_phi
/// longitude steps. Poles are triangle fans; bands are split quads. The
/// result is closed (empty boundary) and consistently oriented;
/// 2*n_theta*n_phi - 2*n_phi triangles.
inline Chain sample_sphere(double R_C, int D, const std::array<int, 3>& axes,
                           const Vec& offset, int n_theta, int n_phi,
                           int orientation = +1) {
  if (R_C <= 0.0) throw std::invalid_argument("sphere: radius must be > 0");
  if (n_theta < 3 || n_phi < 3)
    throw std::invalid_argument("sphere: resolution must be >= 3");
  if (D < 3) throw DimensionError("sphere: ambient dimension must be >= 3");

  auto vertex = [&](double theta, double phi) {
    Vec p = offset.dim() == D ? offset : Vec(D);
    p[axes[0] - 1] += R_C * std::cos(theta) * std::cos(phi);
    p[axes[1] - 1] += R_C * std::cos(theta) * std::sin(phi);
    p[axes[2] - 1] += R_C * std::sin(theta);
    return p;
  };

  // rows[0] and rows[n_theta] are single pole points
  std::vector<std::vector<Vec>> rows(n_theta + 1);
  rows[0].push_back(vertex(-std::numbers::pi / 2, 0.0));
  rows[n_theta].push_back(vertex(std::numbers::pi / 2, 0.0));
  for (int i = 1; i < n_theta; ++i) {
    const double theta = -std::numbers::pi / 2 + std::numbers::pi * i / n_theta;
    rows[i].reserve(n_phi);
    for (int j = 0; j < n_phi; ++j)
      rows[i].push_back(vertex(theta, 2.0 * std::numbers::pi * j / n_phi));
  }

  Chain c;
  auto tri = [&](const Vec& a, const Vec& b, const Vec& d) {
    c.terms.push_back(ChainTerm{Simplex({a, b, d}), orientation});
  };
  for (int j = 0; j < n_phi; ++j) {
    const int jn = (j + 1) % n_phi;
    // south fan
    tri(rows[0][0], rows[1][j], rows[1][jn]);
    // interior bands, quad split along the (i,j)-(i+1,jn) diagonal
    for (int i = 1; i + 1 < n_theta; ++i) {
      tri(rows[i][j], rows[i + 1][j], rows[i + 1][jn]);
      tri(rows[i][j], rows[i + 1][jn], rows[i][jn]);
    }
    // north fan
    tri(rows[n_theta - 1][j], rows[n_theta][0], rows[n_theta - 1][jn]);
  }
  return c;
}

/// Convenience overload: sphere spanning axes {1,2,3} of R^D.
inline Chain sample_sphere(double R_C, int D, int n_theta, int n_phi,
                           int orientation = +1) {
  return sample_sphere(R_C, D, {1, 2, 3}, Vec(D), n_theta, n_phi, orientation);
}

/// Triangulated 2-torus with tube radius r and center radius R_T in the
/// plane of three 1-based axes of R^D:
///   x_a = (R_T + r cos(phi')) cos(theta') - (R_T + r)
///   x_b = (R_T + r cos(phi')) sin(theta')
///   x_c = r sin(phi')
/// The -(R_T + r) shift puts one point of the central circle at the origin
/// of the (a,b,c) subspace. Quads are split along a fixed diagonal;
/// 2*n_theta*n_phi triangles, closed and consistently oriented.
inline Chain sample_torus(double r, double R_T, int D,
                          const std::array<int, 3>& axes, const Vec& offset,
                          int n_theta, int n_phi, int orientation = +1) {
  if (!(R_T > r && r > 0.0))
    throw std::invalid_argument("torus: need R_T > r > 0");
  if (n_theta < 3 || n_phi < 3)
    throw std::invalid_argument("torus: resolution must be >= 3");
  if (D < 3) throw DimensionError("torus: ambient dimension must be >= 3");

  auto vertex = [&](int i, int j) {
    const double theta = 2.0 * std::numbers::pi * i / n_theta;
    const double phi = 2.0 * std::numbers::pi * j / n_phi;
    Vec p = offset.dim() == D ? offset : Vec(D);
    p[axes[0] - 1] += (R_T + r * std::cos(phi)) * std::cos(theta) - (R_T + r);
    p[axes[1] - 1] += (R_T + r * std::cos(phi)) * std::sin(theta);
    p[axes[2] - 1] += r * std::sin(phi);
    return p;
  };

  std::vector<std::vector<Vec>> grid(n_theta, std::vector<Vec>());
  for (int i = 0; i < n_theta; ++i) {
    grid[i].reserve(n_phi);
    for (int j = 0; j < n_phi; ++j) grid[i].push_back(vertex(i, j));
  }

  Chain c;
  for (int i = 0; i < n_theta; ++i) {
    const int in = (i + 1) % n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const int jn = (j + 1) % n_phi;
      const Vec& A = grid[i][j];
      const Vec& B = grid[in][j];
      const Vec& C = grid[in][jn];
      const Vec& Dv = grid[i][jn];
      c.terms.push_back(ChainTerm{Simplex({A, B, C}), orientation});
      c.terms.push_back(ChainTerm{Simplex({A, C, Dv}), orientation});
    }
  }
  return c;
}

/// The 5-dimensional benchmark torus: axes {3,4,5} of R^5.
inline Chain sample_torus(double r, double R_T, int n_theta, int n_phi,
                          int orientation = +1) {
  return sample_torus(r, R_T, 5, {3, 4, 5}, Vec(5), n_theta, n_phi,
                      orientation);
}

// ---------------------------------------------------------------------------
// Skeleton validation
// ---------------------------------------------------------------------------

struct Violation {
  int skeleton = -1;   // index into the set, -1 for set-level findings
  std::string code;    // "dimension", "not-a-cycle", "not-disjoint", ...
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Structural checks on a skeleton set: ambient dimension D, chain dimension
/// D-N, closedness, nondegenerate simplices, pairwise clearance > eps_sing.
/// Reports violations instead of throwing.
inline ValidationReport validate_skeleton_set(const SkeletonSet& s, int D,
                                              int N,
                                              double eps_sing = 1e-6) {
  ValidationReport report;
  auto add = [&](int idx, std::string code, std::string msg) {
    report.violations.push_back(Violation{idx, std::move(code), std::move(msg)});
  };
  if (N < 2) add(-1, "codimension", "N must be >= 2");
  const int m = s.size();
  for (int i = 0; i < m; ++i) {
    const Chain& sk = s.skeletons[i];
    const std::string name =
        i < static_cast<int>(s.labels.size()) ? s.labels[i] : std::to_string(i);
    if (sk.empty()) {
      add(i, "empty", "skeleton '" + name + "' has no simplices");
      continue;
    }
    if (sk.ambient_dim() != D)
      add(i, "ambient-dimension",
          "skeleton '" + name + "' lives in R^" +
              std::to_string(sk.ambient_dim()) + ", expected R^" +
              std::to_string(D));
    if (sk.dim() != D - N)
      add(i, "dimension",
          "skeleton '" + name + "' has dimension " + std::to_string(sk.dim()) +
              ", expected " + std::to_string(D - N));
    bool mixed = false, degen = false, nonfinite = false;
    for (const ChainTerm& t : sk.terms) {
      if (t.simplex.dim() != sk.dim()) mixed = true;
      if (t.simplex.dim() >= 1 && simplex_is_degenerate(t.simplex)) degen = true;
      for (const Vec& v : t.simplex.vertices)
        if (!v.all_finite()) nonfinite = true;
      if (t.coeff == 0) add(i, "zero-coefficient", "skeleton '" + name + "'");
    }
    if (mixed) add(i, "mixed-dimension", "skeleton '" + name + "'");
    if (degen)
      add(i, "degenerate-simplex",
          "skeleton '" + name + "' contains an affinely dependent simplex");
    if (nonfinite)
      add(i, "non-finite", "skeleton '" + name + "' has non-finite coordinates");
    if (sk.dim() >= 1 && !boundary(sk).empty())
      add(i, "not-a-cycle",
          "skeleton '" + name + "' has nonempty boundary");
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d =
          chain_distance(s.skeletons[i], s.skeletons[j], 1e6 * eps_sing + 1.0);
      if (d <= eps_sing)
        add(i, "not-disjoint",
            "skeletons " + std::to_string(i) + " and " + std::to_string(j) +
                " are within " + std::to_string(d));
    }
  return report;
}

}  // namespace homolink
