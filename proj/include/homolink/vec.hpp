#pragma once

#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace homolink {

// Hard cap on the ambient dimension. Keeps points inline (no heap) and the
// partition tables of factorial size bounded.
inline constexpr int kMaxDim = 12;

// Thrown when an evaluation point gets closer than eps_sing to a skeleton.
class SingularProximityError : public std::runtime_error {
 public:
  SingularProximityError(std::string entity, double distance)
      : std::runtime_error("singular proximity near '" + entity +
                           "' (distance " + std::to_string(distance) + ")"),
        entity_(std::move(entity)),
        distance_(distance) {}

  const std::string& entity() const { return entity_; }
  double distance() const { return distance_; }

 private:
  std::string entity_;
  double distance_;
};

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// Point / direction in R^D with runtime dimension, stored inline.
class Vec {
 public:
  Vec() : dim_(0) { coords_.fill(0.0); }

  explicit Vec(int dim, double fill = 0.0) : dim_(dim) {
    check_dim(dim);
    coords_.fill(0.0);
    for (int i = 0; i < dim_; ++i) coords_[i] = fill;
  }

  Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    check_dim(dim_);
    coords_.fill(0.0);
    int i = 0;
    for (double x : xs) coords_[i++] = x;
  }

  static Vec from(const double* data, int dim) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = data[i];
    return v;
  }

  int dim() const { return dim_; }
  double& operator[](int i) { return coords_[i]; }
  double operator[](int i) const { return coords_[i]; }
  const double* data() const { return coords_.data(); }

  bool operator==(const Vec& o) const {
    if (dim_ != o.dim_) return false;
    return std::memcmp(coords_.data(), o.coords_.data(),
                       sizeof(double) * dim_) == 0;
  }
  bool operator!=(const Vec& o) const { return !(*this == o); }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim_; ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim_; ++i) coords_[i] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += coords_[i] * coords_[i];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  bool all_finite() const {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite(coords_[i])) return false;
    return true;
  }

 private:
  static void check_dim(int dim) {
    if (dim < 0 || dim > kMaxDim)
      throw DimensionError("vector dimension " + std::to_string(dim) +
                           " outside [0, " + std::to_string(kMaxDim) + "]");
  }

  std::array<double, kMaxDim> coords_;
  int dim_;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace homolink
