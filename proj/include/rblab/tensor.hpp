#pragma once

// Fixed-capacity dense containers for dimension <= 3 tensor work, generic over
// the scalar (double or Jet), plus the PointTensor value type returned by the
// chart-calculus operations.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rblab/jet.hpp"

namespace rblab {

template <class T>
struct Vec {
  int n = 0;
  std::array<T, 3> a{};
  T& operator[](int i) { return a[i]; }
  const T& operator[](int i) const { return a[i]; }
};

template <class T>
struct Mat {
  int n = 0;
  std::array<T, 9> a{};
  T& operator()(int i, int j) { return a[i * 3 + j]; }
  const T& operator()(int i, int j) const { return a[i * 3 + j]; }
};

template <class T>
struct Ten3 {
  int n = 0;
  std::array<T, 27> a{};
  T& operator()(int i, int j, int k) { return a[i * 9 + j * 3 + k]; }
  const T& operator()(int i, int j, int k) const { return a[i * 9 + j * 3 + k]; }
};

template <class T>
struct Ten4 {
  int n = 0;
  std::array<T, 81> a{};
  T& operator()(int i, int j, int k, int l) { return a[i * 27 + j * 9 + k * 3 + l]; }
  const T& operator()(int i, int j, int k, int l) const { return a[i * 27 + j * 9 + k * 3 + l]; }
};

using Vecd = Vec<double>;
using Matd = Mat<double>;
using Ten3d = Ten3<double>;
using Ten4d = Ten4<double>;

// A tensor's components at one chart point.  variance holds +1 per
// contravariant slot and -1 per covariant slot, in index order.
struct PointTensor {
  std::vector<int> variance;
  int dim = 0;
  std::vector<double> comp;  // row-major, dim^rank entries
  std::vector<double> base;  // chart coordinates of the point

  PointTensor() = default;
  PointTensor(std::vector<int> var, int d, std::vector<double> base_pt)
      : variance(std::move(var)), dim(d), base(std::move(base_pt)) {
    size_t sz = 1;
    for (size_t r = 0; r < variance.size(); ++r) sz *= dim;
    comp.assign(sz, 0.0);
  }

  int rank() const { return static_cast<int>(variance.size()); }

  template <class... I>
  double& operator()(I... idx) {
    return comp[flat(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return comp[flat(idx...)];
  }

  double max_abs() const {
    double m = 0;
    for (double v : comp) m = std::max(m, std::fabs(v));
    return m;
  }

private:
  template <class... I>
  size_t flat(I... idx) const {
    size_t f = 0;
    ((f = f * dim + static_cast<size_t>(idx)), ...);
    return f;
  }
};

}  // namespace rblab
