#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "homolink/chain.hpp"
#include "homolink/quadrature.hpp"

// Closed-form specializations of the invariant form in low dimensions.
// These are written directly from the classical formulas and deliberately do
// not call the general engine: they double as its oracles.

namespace homolink {

enum class ClosedFormKind {
  Residue,     // D = 2, N = 2: winding 1-form around a point
  BiotSavart,  // D = 3, N = 2: field of a unit current along a wire
  GaussFlux,   // D = 3, N = 3: flux 2-form of a unit charge
};

/// Coefficients (for dx_1, dx_2) of the residue 1-form
///   (1/2pi) * (-(x2-s2) dx1 + (x1-s1) dx2) / |x-s|^2.
inline Vec residue_form(const Vec& x, const Vec& s) {
  if (x.dim() != 2 || s.dim() != 2)
    throw DimensionError("residue_form: expects 2-vectors");
  const double dx = x[0] - s[0];
  const double dy = x[1] - s[1];
  const double r2 = dx * dx + dy * dy;
  if (r2 == 0.0) throw SingularProximityError("point", 0.0);
  const double f = 1.0 / (2.0 * std::numbers::pi * r2);
  return Vec{-dy * f, dx * f};
}

/// Magnetic field of a unit current along a piecewise-linear wire,
///   B(x) = (1/4pi) * integral dl' x (x - x') / |x - x'|^3,
/// integrated with the same per-segment Gauss rule and bisection rule as the
/// general engine (order Gauss points, split while length > ratio * dist).
inline Vec biot_savart_field(const Vec& x, const Chain& wire,
                             const QuadConfig& cfg = {}) {
  cfg.validate();
  if (x.dim() != 3) throw DimensionError("biot_savart_field: expects R^3");
  if (wire.dim() != 1)
    throw DimensionError("biot_savart_field: wire must be a 1-chain");

  const auto& rule = quad::gauss_legendre(cfg.order);
  const double eps2 = cfg.eps_sing * cfg.eps_sing;

  auto point_segment_distance = [](const Vec& p, const Vec& a, const Vec& b) {
    const Vec ab = b - a;
    double t = dot(p - a, ab) / ab.norm2();
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + ab * t);
  };

  struct Seg {
    Vec a, b;
  };
  std::function<void(const Seg&, double, int, Vec&)> accumulate =
      [&](const Seg& seg, double coeff, int depth, Vec& out) {
        const Vec mid = (seg.a + seg.b) * 0.5;
        const double half = distance(seg.a, seg.b) * 0.5;
        const double dist = std::max(distance(x, mid) - half, 1e-30);
        if (depth < cfg.max_depth && 2.0 * half > cfg.split_ratio * dist) {
          accumulate(Seg{seg.a, mid}, coeff, depth + 1, out);
          accumulate(Seg{mid, seg.b}, coeff, depth + 1, out);
          return;
        }
        const Vec dl = seg.b - seg.a;
        for (int q = 0; q < cfg.order; ++q) {
          const Vec xp = seg.a + dl * rule.nodes[q];
          const Vec s = x - xp;
          const double r2 = s.norm2();
          if (r2 <= eps2) throw SingularProximityError("wire", std::sqrt(r2));
          const double f = coeff * rule.weights[q] / (r2 * std::sqrt(r2));
          out[0] += f * (dl[1] * s[2] - dl[2] * s[1]);
          out[1] += f * (dl[2] * s[0] - dl[0] * s[2]);
          out[2] += f * (dl[0] * s[1] - dl[1] * s[0]);
        }
      };

  Vec field(3);
  for (const ChainTerm& t : wire.terms) {
    const Vec& a = t.simplex.vertices[0];
    const Vec& b = t.simplex.vertices[1];
    const double d = point_segment_distance(x, a, b);
    if (d <= cfg.eps_sing) throw SingularProximityError("wire", d);
    accumulate(Seg{a, b}, static_cast<double>(t.coeff), 0, field);
  }
  field *= 1.0 / (4.0 * std::numbers::pi);
  return field;
}

/// Coefficients pairing with (dx2^dx3, dx3^dx1, dx1^dx2) of the flux 2-form
///   E(x) = (1/4pi) (x - s) / |x - s|^3.
inline Vec gauss_flux_form(const Vec& x, const Vec& s) {
  if (x.dim() != 3 || s.dim() != 3)
    throw DimensionError("gauss_flux_form: expects 3-vectors");
  const Vec d = x - s;
  const double r2 = d.norm2();
  if (r2 == 0.0) throw SingularProximityError("point", 0.0);
  const double f = 1.0 / (4.0 * std::numbers::pi * r2 * std::sqrt(r2));
  return d * f;
}

}  // namespace homolink
