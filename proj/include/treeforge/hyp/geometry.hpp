#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "treeforge/core/errors.hpp"
#include "treeforge/core/window.hpp"

namespace treeforge {

inline constexpr double pi = std::numbers::pi_v<double>;

using cplx = std::complex<double>;

// Point of the hyperbolic plane in Poincaré disk coordinates.  Everything in
// this module keeps |z| strictly below 1 - 1e-9; points pushed closer to the
// rim than that have lost too much precision to be trusted.
struct hpoint {
  cplx z;
};

inline void require_in_disk(cplx z) {
  require(std::abs(z) < 1.0 - 1e-9, errc::bad_params,
          "point too close to the disk rim: |z| = " + std::to_string(std::abs(z)));
}

// ── metric ──────────────────────────────────────────────────────────────────

// Hyperbolic distance in the disk model: 2 artanh of the Möbius-invariant
// pseudo-distance |a - b| / |1 - conj(a) b|.
inline double hdist(cplx a, cplx b) {
  const double t = std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
  return 2.0 * std::atanh(t);
}

inline double hdist(const hpoint& a, const hpoint& b) { return hdist(a.z, b.z); }

// Area of a hyperbolic disk of radius r: 2 pi (cosh r - 1).
inline double ball_area(double r) {
  const double s = std::sinh(r / 2.0);
  return 4.0 * pi * s * s;
}

// ── model transfer ──────────────────────────────────────────────────────────

// Poincaré -> Klein.  Klein coordinates turn hyperbolic geodesics (and hence
// perpendicular bisectors) into straight chords, at the price of losing
// conformality; a radial point at hyperbolic distance d sits at |k| = tanh d.
inline cplx klein_of(cplx p) { return 2.0 * p / (1.0 + std::norm(p)); }

inline cplx poincare_of(cplx k) {
  return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k))));
}

inline vec2 as_vec2(cplx z) { return {z.real(), z.imag()}; }

// ── isometries ──────────────────────────────────────────────────────────────

// Orientation-preserving isometry of the disk, z -> (a z + b) / (conj(b) z +
// conj(a)), kept normalized to |a|^2 - |b|^2 = 1.  These are the unit-
// determinant Möbius matrices of the disk model; composition is the matrix
// product.
struct mobius {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  cplx apply(cplx z) const { return (a * z + b) / (std::conj(b) * z + std::conj(a)); }
};

inline mobius normalized(const mobius& m) {
  const double det = std::norm(m.a) - std::norm(m.b);
  require(det > 1e-12, errc::bad_params, "mobius matrix is not disk-preserving");
  const double s = 1.0 / std::sqrt(det);
  return {m.a * s, m.b * s};
}

inline mobius compose(const mobius& f, const mobius& g) {
  return {f.a * g.a + f.b * std::conj(g.b), f.a * g.b + f.b * std::conj(g.a)};
}

inline mobius inverse(const mobius& m) { return {std::conj(m.a), -m.b}; }

// Rotation by theta about the disk center.
inline mobius rotation(double theta) {
  return {std::polar(1.0, theta / 2.0), cplx{0.0, 0.0}};
}

// Translation taking the center to p.
inline mobius translation_to(cplx p) {
  const double s = 1.0 / std::sqrt(1.0 - std::norm(p));
  return {cplx{s, 0.0}, p * s};
}

// Translation by hyperbolic length s along the positive real axis.
inline mobius axis_translation(double s) {
  return {cplx{std::cosh(s / 2.0), 0.0}, cplx{std::sinh(s / 2.0), 0.0}};
}

// Translation by hyperbolic length s along direction theta.
inline mobius translation_along(double theta, double s) {
  return compose(rotation(theta), compose(axis_translation(s), rotation(-theta)));
}

// Direction (angle at `from`) of the geodesic toward `to`.  The disk model is
// conformal, so this is an honest hyperbolic angle.
inline double direction_of(cplx from, cplx to) {
  return std::arg((to - from) / (1.0 - std::conj(from) * to));
}

}  // namespace treeforge
