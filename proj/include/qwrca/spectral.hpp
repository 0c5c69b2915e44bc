#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "qwrca/quadrature.hpp"
#include "qwrca/types.hpp"

namespace qwrca {

/// Fourier-side data at one momentum xi: the phase phi with
/// cos(phi) = sqrt(1 - cos^2(t) sin^2(xi)), sin(phi) = -cos(t) sin(xi),
/// and the unit-modulus eigenvalues lambda+ = e^{i phi},
/// lambda- = -e^{-i phi} of the two-term recurrence.
template <typename Scalar>
struct SpectralPoint {
  Scalar xi;
  Scalar phi;
  std::complex<Scalar> lambda_plus;
  std::complex<Scalar> lambda_minus;
};

template <typename Scalar>
SpectralPoint<Scalar> spectral_point(Scalar xi, ThetaParam<Scalar> theta) {
  theta.require_interior("spectral_point");
  const Scalar s = theta.cos() * std::sin(xi);
  const Scalar c = std::sqrt(Scalar(1) - s * s);
  const Scalar phi = std::atan2(-s, c);
  return {xi, phi, {c, -s}, {-c, -s}};
}

/// Seeds of the xi-indexed scalar recurrence:
/// X~_0(xi) = alpha, X~_1(xi) = e^{-i xi} beta + e^{i xi} gamma.
template <typename Scalar>
std::pair<std::complex<Scalar>, std::complex<Scalar>> fourier_initial(
    const InitialTriple<Scalar>& t, Scalar xi) {
  const std::complex<Scalar> rot{std::cos(xi), std::sin(xi)};
  return {t.alpha, t.beta * std::conj(rot) + t.gamma * rot};
}

template <typename Scalar>
struct FourierCoefficients {
  std::complex<Scalar> A;
  std::complex<Scalar> B;
};

/// A(xi) = (alpha e^{-i phi} + X~_1)/(2 cos phi),
/// B(xi) = (alpha e^{i phi} - X~_1)/(2 cos phi). The denominator is bounded
/// below by sin(theta) > 0 on the open interior.
template <typename Scalar>
FourierCoefficients<Scalar> fourier_coefficients(const InitialTriple<Scalar>& t,
                                                 ThetaParam<Scalar> theta,
                                                 Scalar xi) {
  const auto point = spectral_point(xi, theta);
  const auto [x0, x1] = fourier_initial(t, xi);
  const std::complex<Scalar> phase{std::cos(point.phi), std::sin(point.phi)};
  const Scalar denom = 2 * point.lambda_plus.real();
  return {(x0 * std::conj(phase) + x1) / denom, (x0 * phase - x1) / denom};
}

/// Closed form X~_n(xi) = A e^{i n phi} + B (-1)^n e^{-i n phi}.
template <typename Scalar>
std::complex<Scalar> xt_closed(const InitialTriple<Scalar>& t,
                               ThetaParam<Scalar> theta, Scalar xi,
                               std::int64_t n) {
  const auto point = spectral_point(xi, theta);
  const auto coeff = fourier_coefficients(t, theta, xi);
  const std::complex<Scalar> rot = std::polar(Scalar(1), Scalar(n) * point.phi);
  const Scalar sign = n % 2 == 0 ? Scalar(1) : Scalar(-1);
  return coeff.A * rot + sign * coeff.B * std::conj(rot);
}

inline Eigen::Index parseval_default_grid(std::int64_t n) {
  Eigen::Index g = 8;
  while (g < 2 * n + 4) g *= 2;
  return g;
}

/// ||X(n)||^2 as (1/2pi) \int |X~_n(xi)|^2 dxi by the periodic trapezoid
/// rule, exact once the grid resolves the trigonometric polynomial
/// |X~_n|^2 of degree <= 2n.
template <typename Scalar>
Scalar parseval_norm(const InitialTriple<Scalar>& t, ThetaParam<Scalar> theta,
                     std::int64_t n, Eigen::Index grid_size) {
  if (grid_size < 2 * n + 4) {
    throw std::invalid_argument("parseval_norm: grid_size must be >= 2n+4");
  }
  Scalar sum{};
  const Scalar step = 2 * std::numbers::pi_v<Scalar> / Scalar(grid_size);
  for (Eigen::Index j = 0; j < grid_size; ++j) {
    sum += std::norm(xt_closed(t, theta, Scalar(j) * step, n));
  }
  return sum / Scalar(grid_size);
}

template <typename Scalar>
Scalar parseval_norm(const InitialTriple<Scalar>& t, ThetaParam<Scalar> theta,
                     std::int64_t n) {
  return parseval_norm(t, theta, n, parseval_default_grid(n));
}

/// The n-independent steady part of the exact norm decomposition, equal to
/// the n -> infinity limit of ||X(n)||^2:
///   [ (|a|^2+|b|^2+|g|^2) - sym(a, b-g) (1-sin t)/cos t
///                         - sym(b, g) ((1-sin t)/cos t)^2 ] / (2 sin t).
template <typename Scalar>
Scalar norm_limit(const InitialTriple<Scalar>& t, ThetaParam<Scalar> theta) {
  theta.require_interior("norm_limit");
  const Scalar damp = (Scalar(1) - theta.sin()) / theta.cos();
  const Scalar total = std::norm(t.alpha) + std::norm(t.beta) + std::norm(t.gamma);
  return (total - hermitian_sym(t.alpha, t.beta - t.gamma) * damp -
          hermitian_sym(t.beta, t.gamma) * damp * damp) /
         (2 * theta.sin());
}

/// ||X(n)||^2 split into the steady part plus the alternating-sign
/// oscillatory part (the latter already carries its (-1)^n factor).
template <typename Scalar>
struct NormDecomposition {
  Scalar steady;
  Scalar oscillatory;
  Scalar quad_error;  ///< conservative bound on quadrature error in total()

  Scalar total() const { return steady + oscillatory; }
};

/// Exact closed form of ||X(n)||^2: the steady bracket plus (-1)^n/pi times
/// four oscillatory integrals over x in [theta - pi/2, 0]. The integrands
/// carry a 1/sqrt(cos^2 x - sin^2 t) endpoint singularity; the substitution
/// sin x = -cos(t) sin(u), u in [0, pi/2], removes it analytically:
///   dx / (cos x sqrt(cos^2 x - sin^2 t))       -> du / (1 - cos^2 t sin^2 u)
///   sqrt(cos^2 x - sin^2 t) dx / cos x         -> cos^2 t cos^2 u du / (...)
/// Quadrature nodes scale linearly with n to track the cos(2nx) kernels.
template <typename Scalar>
NormDecomposition<Scalar> closed_form_norm(const InitialTriple<Scalar>& t,
                                           ThetaParam<Scalar> theta,
                                           std::int64_t n,
                                           Scalar quad_tol = Scalar(1e-11)) {
  theta.require_interior("closed_form_norm");
  if (n < 0) throw std::invalid_argument("closed_form_norm requires n >= 0");

  const Scalar co = theta.cos();
  const Scalar s1 = std::norm(t.alpha);
  const Scalar s2 = std::norm(t.beta) + std::norm(t.gamma);
  const Scalar cross = hermitian_sym(t.beta, t.gamma);
  const Scalar diff_sym = hermitian_sym(t.alpha, t.beta - t.gamma);

  const auto x_of = [co](Scalar u) { return -std::asin(co * std::sin(u)); };
  const auto weight = [co](Scalar u) {
    const Scalar s = co * std::sin(u);
    return Scalar(1) / (Scalar(1) - s * s);
  };

  const std::int64_t panels = std::max<std::int64_t>(4, n);
  const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  const auto quad = [&](auto&& f) {
    return integrate_adaptive(f, Scalar(0), half_pi, quad_tol, panels);
  };

  const auto i1 = quad([&](Scalar u) {
    return std::cos(2 * Scalar(n - 1) * x_of(u)) * weight(u);
  });
  const auto i2 = quad([&](Scalar u) {
    const Scalar x = x_of(u);
    return std::sin(x) * std::sin(Scalar(2 * n - 1) * x) * weight(u);
  });
  const auto i3 = quad([&](Scalar u) {
    return std::cos(2 * Scalar(n) * x_of(u)) * weight(u);
  });
  const auto i4 = quad([&](Scalar u) {
    const Scalar cu = std::cos(u);
    return std::cos(2 * Scalar(n) * x_of(u)) * cu * cu * weight(u);
  });
  if (!(i1.converged && i2.converged && i3.converged && i4.converged)) {
    throw std::runtime_error(
        "closed_form_norm: quadrature did not converge; error estimate " +
        std::to_string(i1.error + i2.error + i3.error + i4.error));
  }

  const Scalar bracket = s1 * i1.value - diff_sym / co * i2.value -
                         s2 * i3.value -
                         cross * (Scalar(2) * i4.value - i3.value);
  const Scalar sign = n % 2 == 0 ? Scalar(1) : Scalar(-1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar err =
      (s1 * i1.error + std::abs(diff_sym / co) * i2.error +
       (s2 + std::abs(cross)) * i3.error + Scalar(2) * std::abs(cross) * i4.error) /
      pi;
  return {norm_limit(t, theta), sign * bracket / pi, err};
}

/// h_n(x) = cos(2(n-1)x) - 2 sin(x) sin((2n-1)x) - cos(2nx), identically
/// zero. Arguments k*x rounded in one multiply cost about |k x| ulps, enough
/// to push the residual past 1e-13 near n = 200; the product is kept as an
/// exact hi+lo pair and the trig corrected to first order in lo.
template <typename Scalar>
Scalar h_n_value(Scalar x, std::int64_t n) {
  const auto cos_kx = [x](std::int64_t k) {
    const Scalar hi = Scalar(k) * x;
    const Scalar lo = std::fma(Scalar(k), x, -hi);
    return std::cos(hi) - lo * std::sin(hi);
  };
  const auto sin_kx = [x](std::int64_t k) {
    const Scalar hi = Scalar(k) * x;
    const Scalar lo = std::fma(Scalar(k), x, -hi);
    return std::sin(hi) + lo * std::cos(hi);
  };
  return cos_kx(2 * (n - 1)) - 2 * std::sin(x) * sin_kx(2 * n - 1) -
         cos_kx(2 * n);
}

/// Mean-square norms ||A||*^2 and ||B||*^2 of the Fourier coefficients over
/// one period, by the periodic rectangle rule (the integrands are analytic
/// and 2pi-periodic, so convergence is geometric in grid_size).
template <typename Scalar>
std::pair<Scalar, Scalar> fourier_coefficient_norms(
    const InitialTriple<Scalar>& t, ThetaParam<Scalar> theta,
    Eigen::Index grid_size = 8192) {
  theta.require_interior("fourier_coefficient_norms");
  Scalar a_sq{}, b_sq{};
  const Scalar step = 2 * std::numbers::pi_v<Scalar> / Scalar(grid_size);
  for (Eigen::Index j = 0; j < grid_size; ++j) {
    const auto coeff = fourier_coefficients(t, theta, Scalar(j) * step);
    a_sq += std::norm(coeff.A);
    b_sq += std::norm(coeff.B);
  }
  return {a_sq / Scalar(grid_size), b_sq / Scalar(grid_size)};
}

}  // namespace qwrca
