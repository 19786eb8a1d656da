// Copyright 2026 The qsprep developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <unordered_map>

namespace qsprep {

using Complex = std::complex<double>;

// Absolute tolerance for merging amplitudes/scalars in the unique table.
inline constexpr double kMergeTol = 1e-9;
// Build round-trip tolerance, per amplitude.
inline constexpr double kRoundTripTol = 1e-10;
// Gate matrices must be unitary to this tolerance.
inline constexpr double kUnitaryTol = 1e-10;
// Transpiled circuits must match the original up to global phase to this.
inline constexpr double kTranspileTol = 1e-8;
// Amplitudes below this fraction of the largest input magnitude are treated
// as exact zeros when a diagram is built. Relative, so the cut is consistent
// across subtrees at any input scale; the per-amplitude error it introduces
// stays far inside kRoundTripTol for sensibly scaled states.
inline constexpr double kRelativeZeroCut = 1e-12;

inline bool approx_zero(double x, double tol = kMergeTol) {
  return std::abs(x) <= tol;
}

inline bool approx_zero(const Complex& z, double tol = kMergeTol) {
  return std::abs(z.real()) <= tol && std::abs(z.imag()) <= tol;
}

inline bool approx_equal(const Complex& a, const Complex& b,
                         double tol = kMergeTol) {
  return approx_zero(a - b, tol);
}

// Fold an angle into (-pi, pi]; values within kMergeTol of -pi land on +pi so
// the seam never splits nearly-equal phases.
inline double wrap_angle(double theta) {
  double t = std::remainder(theta, 2.0 * M_PI);  // [-pi, pi]
  if (t <= -M_PI + kMergeTol) t += 2.0 * M_PI;
  return t;
}

inline bool angles_close(double a, double b, double tol = kMergeTol) {
  return std::abs(wrap_angle(a - b)) <= tol;
}

// Canonical representatives for floating values, so that values equal within
// kMergeTol share the exact same bits and can be hashed. Quantized cells of
// width kMergeTol with neighbour probing: two values within the tolerance are
// at most one cell apart per coordinate. The map is keyed on the cell pair
// itself (not a derived hash), so hash collisions can never drop entries.
class ValueRegistry {
 public:
  Complex canon(Complex z) {
    if (z.real() == 0.0) z = Complex(0.0, z.imag());  // kill -0.0
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    const int64_t kr = cell(z.real()), ki = cell(z.imag());
    for (int64_t dr = -1; dr <= 1; ++dr)
      for (int64_t di = -1; di <= 1; ++di) {
        auto it = complex_.find(CellPair{kr + dr, ki + di});
        if (it != complex_.end() && approx_equal(it->second, z))
          return it->second;
      }
    complex_.emplace(CellPair{kr, ki}, z);
    return z;
  }

  double canon_angle(double theta) {
    double t = wrap_angle(theta);
    if (t == 0.0) t = 0.0;  // kill -0.0
    const int64_t k = cell(t);
    for (int64_t d = -1; d <= 1; ++d) {
      auto it = angle_.find(k + d);
      if (it != angle_.end() && angles_close(it->second, t)) return it->second;
    }
    angle_.emplace(k, t);
    return t;
  }

 private:
  struct CellPair {
    int64_t re, im;
    bool operator==(const CellPair&) const = default;
  };
  struct CellPairHash {
    static uint64_t mix(uint64_t x) {  // splitmix64 finalizer
      x += 0x9e3779b97f4a7c15ull;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
      return x ^ (x >> 31);
    }
    size_t operator()(const CellPair& c) const {
      return mix(mix(static_cast<uint64_t>(c.re)) +
                 static_cast<uint64_t>(c.im));
    }
  };
  static int64_t cell(double x) {
    return static_cast<int64_t>(std::llround(x / kMergeTol));
  }
  std::unordered_map<CellPair, Complex, CellPairHash> complex_;
  std::unordered_map<int64_t, double> angle_;
};

inline uint64_t hash_combine(uint64_t seed, uint64_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace qsprep
