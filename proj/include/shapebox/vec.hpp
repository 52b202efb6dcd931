#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>

namespace shapebox {

inline constexpr int kMaxDim = 4;

/// Raised when a caller breaks an operation's documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sums up to four terms in ascending order so the result does not depend on
// the order the terms were supplied in. Signed coordinate permutations of a
// point must produce bit-identical norms, otherwise escape-time orbits drift
// apart under iteration.
inline double order_free_sum(std::array<double, kMaxDim> t, int n) {
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && t[j] < t[j - 1]; --j) std::swap(t[j], t[j - 1]);
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += t[i];
  return s;
}

/// Point or direction in 2, 3 or 4 dimensions.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) { check_dim(dim); }
  Vec(std::initializer_list<double> values) : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    std::copy(values.begin(), values.end(), c_.begin());
  }
  static Vec from_span(std::span<const double> values) {
    Vec v(static_cast<int>(values.size()));
    std::copy(values.begin(), values.end(), v.c_.begin());
    return v;
  }
  static Vec zero(int dim) { return Vec(dim); }
  static Vec axis(int dim, int k) {
    Vec v(dim);
    v[k] = 1.0;
    return v;
  }

  int dim() const { return dim_; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  std::span<const double> components() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  double norm_squared() const {
    std::array<double, kMaxDim> sq{};
    for (int k = 0; k < dim_; ++k) sq[k] = c_[k] * c_[k];
    return order_free_sum(sq, dim_);
  }
  double norm() const { return std::sqrt(norm_squared()); }
  bool is_finite() const {
    for (int k = 0; k < dim_; ++k) {
      if (!std::isfinite(c_[k])) return false;
    }
    return true;
  }

  Vec& operator+=(const Vec& o) {
    for (int k = 0; k < dim_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int k = 0; k < dim_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int k = 0; k < dim_; ++k) c_[k] *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.dim_ != b.dim_) return false;
    for (int k = 0; k < a.dim_; ++k) {
      if (a.c_[k] != b.c_[k]) return false;
    }
    return true;
  }

 private:
  static void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) throw ContractViolation("vector dimension must be in [1, 4], got " + std::to_string(dim));
  }

  int dim_ = 0;
  std::array<double, kMaxDim> c_{};
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

inline Vec normalized(const Vec& v) { return v * (1.0 / v.norm()); }

inline Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace shapebox
