#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "homolink/quadrature.hpp"

using namespace homolink;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 on [0,1]") {
  for (int n = 1; n <= 8; ++n) {
    const auto rule = quad::gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == Catch::Approx(1.0).epsilon(1e-14));
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double val = 0.0;
      for (int i = 0; i < n; ++i)
        val += rule.weights[i] * std::pow(rule.nodes[i], deg);
      CHECK(val == Catch::Approx(1.0 / (deg + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("simplex rule integrates 1 to the reference volume 1/k!") {
  double factorial = 1.0;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) factorial *= k;
    const auto& rule = quad::simplex_rule(k, 4);
    double wsum = 0.0;
    for (const auto& node : rule.nodes) wsum += node.weight;
    CHECK(wsum == Catch::Approx(1.0 / factorial).epsilon(1e-13));
  }
}

TEST_CASE("simplex rule integrates coordinates exactly") {
  // On the reference k-simplex, integral of t_i = 1/(k+1)!.
  for (int k = 1; k <= 4; ++k) {
    const auto& rule = quad::simplex_rule(k, 4);
    double fact = 1.0;
    for (int i = 2; i <= k + 1; ++i) fact *= i;
    for (int axis = 0; axis < k; ++axis) {
      double val = 0.0;
      for (const auto& node : rule.nodes) val += node.weight * node.t[axis];
      CHECK(val == Catch::Approx(1.0 / fact).epsilon(1e-12));
    }
  }
}

TEST_CASE("simplex nodes stay inside the reference simplex") {
  for (int k = 1; k <= 5; ++k) {
    const auto& rule = quad::simplex_rule(k, 5);
    for (const auto& node : rule.nodes) {
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        CHECK(node.t[i] >= 0.0);
        sum += node.t[i];
      }
      CHECK(sum <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("map_to_simplex reproduces vertices and centroid") {
  const Simplex tri({Vec{0.0, 0.0, 0.0}, Vec{2.0, 0.0, 0.0}, Vec{0.0, 2.0, 2.0}});
  const double zero[2] = {0.0, 0.0};
  CHECK(quad::map_to_simplex(tri, zero) == tri.vertices[0]);
  const double e1[2] = {1.0, 0.0};
  CHECK(quad::map_to_simplex(tri, e1) == tri.vertices[1]);
  const double mid[2] = {1.0 / 3.0, 1.0 / 3.0};
  const Vec c = quad::map_to_simplex(tri, mid);
  const Vec expect = tri.centroid();
  for (int d = 0; d < 3; ++d)
    CHECK(c[d] == Catch::Approx(expect[d]).margin(1e-15));
}

TEST_CASE("QuadConfig validation") {
  QuadConfig bad;
  bad.order = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = QuadConfig{};
  bad.split_ratio = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = QuadConfig{};
  bad.max_depth = 13;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(QuadConfig{}.validate());
}
