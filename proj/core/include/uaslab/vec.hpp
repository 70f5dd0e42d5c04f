// Copyright 2026 The uaslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UASLAB_VEC_HPP_
#define UASLAB_VEC_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace uaslab {

// Dense coordinate vector in the ambient dimension d. Iterates, subgradients
// and drift directions are all plain Vecs; operations that care about
// finiteness or dimension check at their entry points.
using Vec = std::vector<double>;

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(squared_norm(a)); }

inline double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

// y += a * x
inline void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(Vec& x, double a) {
  for (double& v : x) v *= a;
}

inline void set_zero(Vec& x) { std::fill(x.begin(), x.end(), 0.0); }

inline bool all_finite(const Vec& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace uaslab

#endif  // UASLAB_VEC_HPP_
