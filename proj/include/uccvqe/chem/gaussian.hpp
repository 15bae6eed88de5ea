#pragma once

// Closed-form integrals over normalized primitive s-type Gaussians,
// templated on the scalar so that they can be evaluated in extended
// precision.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace uccvqe::chem {

/// Boys function of order zero, F0(x) = int_0^1 exp(-x t^2) dt.
template <typename Scalar>
Scalar boys_f0(Scalar x) {
  using std::erf;
  using std::sqrt;
  if (!(x >= Scalar(0))) throw std::domain_error("boys_f0: negative argument");
  if (x < Scalar(1e-6)) {
    // Taylor series; the x^3 term is below 1e-19 here.
    return Scalar(1) - x / Scalar(3) + x * x / Scalar(10);
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(0.5) * sqrt(pi / x) * erf(sqrt(x));
}

template <typename Scalar>
Scalar primitive_norm(Scalar alpha) {
  using std::pow;
  return pow(Scalar(2) * alpha / std::numbers::pi_v<Scalar>, Scalar(0.75));
}

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
Scalar overlap_primitive(Scalar a, const Vec3<Scalar>& A, Scalar b, const Vec3<Scalar>& B) {
  using std::exp;
  using std::pow;
  const Scalar p = a + b;
  const Scalar ab2 = (A - B).squaredNorm();
  return primitive_norm(a) * primitive_norm(b) *
         pow(std::numbers::pi_v<Scalar> / p, Scalar(1.5)) * exp(-a * b / p * ab2);
}

template <typename Scalar>
Scalar kinetic_primitive(Scalar a, const Vec3<Scalar>& A, Scalar b, const Vec3<Scalar>& B) {
  const Scalar p = a + b;
  const Scalar mu = a * b / p;
  const Scalar ab2 = (A - B).squaredNorm();
  return mu * (Scalar(3) - Scalar(2) * mu * ab2) * overlap_primitive(a, A, b, B);
}

/// Attraction to a point charge Z at C (negative for Z > 0).
template <typename Scalar>
Scalar nuclear_primitive(Scalar a, const Vec3<Scalar>& A, Scalar b, const Vec3<Scalar>& B,
                         Scalar Z, const Vec3<Scalar>& C) {
  using std::exp;
  const Scalar p = a + b;
  const Vec3<Scalar> P = (a * A + b * B) / p;
  const Scalar ab2 = (A - B).squaredNorm();
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return -Z * primitive_norm(a) * primitive_norm(b) * Scalar(2) * pi / p *
         exp(-a * b / p * ab2) * boys_f0(p * (P - C).squaredNorm());
}

/// Electron repulsion (ab|cd) in chemist notation.
template <typename Scalar>
Scalar eri_primitive(Scalar a, const Vec3<Scalar>& A, Scalar b, const Vec3<Scalar>& B,
                     Scalar c, const Vec3<Scalar>& C, Scalar d, const Vec3<Scalar>& D) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  const Scalar p = a + b;
  const Scalar q = c + d;
  const Vec3<Scalar> P = (a * A + b * B) / p;
  const Vec3<Scalar> Q = (c * C + d * D) / q;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar pref = Scalar(2) * pow(pi, Scalar(2.5)) / (p * q * sqrt(p + q));
  const Scalar e = exp(-a * b / p * (A - B).squaredNorm() - c * d / q * (C - D).squaredNorm());
  return primitive_norm(a) * primitive_norm(b) * primitive_norm(c) * primitive_norm(d) *
         pref * e * boys_f0(p * q / (p + q) * (P - Q).squaredNorm());
}

}  // namespace uccvqe::chem
