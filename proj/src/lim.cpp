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

#include "qsprep/lim.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsprep {

std::string to_string(GroupKind g) {
  switch (g) {
    case GroupKind::ScalarOnly: return "scalar";
    case GroupKind::Pauli: return "pauli";
    case GroupKind::Xp: return "xp";
  }
  return "?";
}

std::array<Complex, 4> LimFactor::matrix() const {
  const Complex e = std::polar(1.0, theta);
  if (x == 0) return {Complex(1, 0), Complex(0, 0), Complex(0, 0), e};
  // X * P(theta): |0> -> |1>, |1> -> e^{i theta}|0>.
  return {Complex(0, 0), e, Complex(1, 0), Complex(0, 0)};
}

// P(t) X = e^{it} X P(-t), so
// (X^b1 P(t1)) (X^b2 P(t2)) = e^{i t1 b2} X^{b1^b2} P(t2 + (b2 ? -t1 : t1)).
ScaledFactor factor_product(const LimFactor& f1, const LimFactor& f2) {
  ScaledFactor r;
  r.scalar = f2.x ? std::polar(1.0, f1.theta) : Complex(1.0, 0.0);
  r.factor.x = f1.x ^ f2.x;
  r.factor.theta = wrap_angle(f2.theta + (f2.x ? -f1.theta : f1.theta));
  return r;
}

// P(t)^dag = P(-t); (X P(t))^dag = e^{-it} X P(t).
ScaledFactor factor_adjoint(const LimFactor& f) {
  if (f.x == 0) return {Complex(1.0, 0.0), LimFactor{0, wrap_angle(-f.theta)}};
  return {std::polar(1.0, -f.theta), f};
}

bool factor_in_group(const LimFactor& f, GroupKind g, double tol) {
  switch (g) {
    case GroupKind::ScalarOnly:
      return f.x == 0 && angles_close(f.theta, 0.0, tol);
    case GroupKind::Pauli:
      return angles_close(f.theta, 0.0, tol) || angles_close(f.theta, M_PI, tol);
    case GroupKind::Xp:
      return true;
  }
  return false;
}

bool Lim::has_identity_factors() const {
  for (const auto& f : factors)
    if (!f.is_identity()) return false;
  return true;
}

Lim Lim::times(const Lim& other) const {
  if (factors.size() != other.factors.size())
    throw std::invalid_argument("Lim::times: length mismatch");
  Lim r;
  r.scalar = scalar * other.scalar;
  r.factors.resize(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    ScaledFactor p = factor_product(factors[i], other.factors[i]);
    r.scalar *= p.scalar;
    r.factors[i] = p.factor;
  }
  return r;
}

Lim Lim::inverse() const {
  if (is_zero()) throw std::domain_error("Lim::inverse: zero LIM");
  Lim r;
  r.scalar = 1.0 / scalar;
  r.factors.resize(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    ScaledFactor a = factor_adjoint(factors[i]);
    r.scalar *= a.scalar;
    r.factors[i] = a.factor;
  }
  return r;
}

Lim Lim::lifted() const {
  Lim r = *this;
  r.factors.push_back(LimFactor{});
  return r;
}

std::vector<Complex> Lim::apply(const std::vector<Complex>& v) const {
  if (v.size() != (size_t{1} << factors.size()))
    throw std::invalid_argument("Lim::apply: dimension mismatch");
  std::vector<Complex> out = v;
  for (size_t q = 0; q < factors.size(); ++q) {
    if (factors[q].is_identity()) continue;
    const auto m = factors[q].matrix();
    const size_t mask = size_t{1} << q;
    for (size_t i = 0; i < out.size(); ++i) {
      if (i & mask) continue;
      const Complex a = out[i], b = out[i | mask];
      out[i] = m[0] * a + m[1] * b;
      out[i | mask] = m[2] * a + m[3] * b;
    }
  }
  for (auto& z : out) z *= scalar;
  return out;
}

std::string Lim::to_string() const {
  std::ostringstream os;
  os.precision(6);
  if (is_zero()) return "0";
  const bool real_scalar = approx_zero(scalar.imag());
  if (real_scalar)
    os << scalar.real();
  else
    os << "(" << scalar.real() << (scalar.imag() < 0 ? "-" : "+")
       << std::abs(scalar.imag()) << "i)";
  bool any = false;
  for (size_t i = factors.size(); i-- > 0;) {
    const auto& f = factors[i];
    if (f.is_identity()) continue;
    os << (any ? "*" : "*");
    any = true;
    const bool pi_phase = angles_close(f.theta, M_PI);
    if (f.x && f.theta == 0.0)
      os << "X" << i;
    else if (f.x && pi_phase)
      os << "XZ" << i;
    else if (f.x)
      os << "XP" << i << "(" << f.theta << ")";
    else if (pi_phase)
      os << "Z" << i;
    else if (angles_close(f.theta, M_PI / 2))
      os << "S" << i;
    else
      os << "P" << i << "(" << f.theta << ")";
  }
  return os.str();
}

uint64_t hash_value(const Lim& l) {
  uint64_t h = std::bit_cast<uint64_t>(l.scalar.real());
  h = hash_combine(h, std::bit_cast<uint64_t>(l.scalar.imag()));
  for (const auto& f : l.factors) {
    h = hash_combine(h, f.x);
    h = hash_combine(h, std::bit_cast<uint64_t>(f.theta));
  }
  return h;
}

}  // namespace qsprep
