#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qwrca/amplitude_row.hpp"
#include "qwrca/types.hpp"

namespace qwrca {

/// Two consecutive rows X(n), X(n+1); enough to run the second-order
/// recurrence in either time direction.
template <typename Scalar>
struct RcaState {
  std::int64_t time = 0;
  AmplitudeRow<Scalar> row_n;
  AmplitudeRow<Scalar> row_np1;
};

/// Coefficients of the general two-row update
///   X_k(n+2) = a*X_{k+1}(n+1) + d*X_{k-1}(n+1) - delta*X_k(n)
/// where delta plays the role of ad - bc. Arbitrary values are accepted;
/// a = d = 1, delta = 1 gives the discretized wave-equation rule.
template <typename Scalar>
struct RcaCoefficients {
  std::complex<Scalar> a;
  std::complex<Scalar> d;
  std::complex<Scalar> delta;

  static RcaCoefficients from_coin(const UnitaryCoin<Scalar>& coin) {
    return {coin.a(), coin.d(), coin.delta()};
  }
  /// H(theta) specialization: a = cos t, d = -cos t, delta = -1, so the
  /// update reads X_k(n+2) = cos t*[X_{k+1}(n+1) - X_{k-1}(n+1)] + X_k(n).
  static RcaCoefficients from_theta(ThetaParam<Scalar> theta) {
    return {{theta.cos(), 0}, {-theta.cos(), 0}, {Scalar(-1), 0}};
  }
};

template <typename Scalar>
struct MomentReport {
  std::int64_t n;
  Scalar norm_sq;
  Scalar first_moment;
};

template <typename Scalar>
MomentReport<Scalar> moment_report(const AmplitudeRow<Scalar>& row,
                                   std::int64_t n) {
  return {n, squared_norm(row), first_moment(row)};
}

/// Rows at times 0 and 1 from the triple (alpha, beta, gamma):
/// X(0) = {0: alpha}, X(1) = {-1: beta, +1: gamma}.
template <typename Scalar>
RcaState<Scalar> rca_initial(const InitialTriple<Scalar>& triple) {
  typename AmplitudeRow<Scalar>::Vector row1(3);
  row1 << triple.beta, std::complex<Scalar>{}, triple.gamma;
  return {0, AmplitudeRow<Scalar>::single(0, triple.alpha),
          AmplitudeRow<Scalar>(-1, std::move(row1))};
}

template <typename Scalar>
RcaState<Scalar> rca_step_general(const RcaState<Scalar>& state,
                                  const RcaCoefficients<Scalar>& coeffs) {
  const std::int64_t first =
      std::min(state.row_np1.first_site() - 1, state.row_n.first_site());
  const std::int64_t last =
      std::max(state.row_np1.last_site() + 1, state.row_n.last_site());
  const Eigen::Index count = static_cast<Eigen::Index>(last - first + 1);

  auto next = (coeffs.a * state.row_np1.read_window(first + 1, count) +
               coeffs.d * state.row_np1.read_window(first - 1, count) -
               coeffs.delta * state.row_n.read_window(first, count))
                  .eval();
  return {state.time + 1, state.row_np1,
          AmplitudeRow<Scalar>(first, std::move(next))};
}

template <typename Scalar>
RcaState<Scalar> rca_step_theta(const RcaState<Scalar>& state,
                                ThetaParam<Scalar> theta) {
  return rca_step_general(state, RcaCoefficients<Scalar>::from_theta(theta));
}

/// Exact inverse of rca_step_theta:
///   X_k(n) = X_k(n+2) - cos t*[X_{k+1}(n+1) - X_{k-1}(n+1)]
/// evaluated with the same coefficient products as the forward step.
template <typename Scalar>
RcaState<Scalar> rca_step_back(const RcaState<Scalar>& state,
                               ThetaParam<Scalar> theta) {
  if (state.time < 1) {
    throw std::invalid_argument("rca_step_back requires time >= 1");
  }
  const auto coeffs = RcaCoefficients<Scalar>::from_theta(theta);
  const std::int64_t first = state.row_n.first_site() + 1;
  const std::int64_t last = state.row_n.last_site() - 1;
  const Eigen::Index count = static_cast<Eigen::Index>(last - first + 1);
  if (count < 1) {
    throw std::invalid_argument("rca_step_back: row at time n is too narrow");
  }

  auto recovered = (state.row_np1.read_window(first, count) -
                    coeffs.a * state.row_n.read_window(first + 1, count) -
                    coeffs.d * state.row_n.read_window(first - 1, count))
                       .eval();
  return {state.time - 1, AmplitudeRow<Scalar>(first, std::move(recovered)),
          state.row_n};
}

/// Rows X(0), X(1), ..., X(n).
template <typename Scalar>
std::vector<AmplitudeRow<Scalar>> rca_evolve(const InitialTriple<Scalar>& triple,
                                             ThetaParam<Scalar> theta,
                                             std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
  RcaState<Scalar> state = rca_initial(triple);
  std::vector<AmplitudeRow<Scalar>> rows;
  rows.reserve(static_cast<std::size_t>(steps) + 1);
  rows.push_back(state.row_n);
  if (steps == 0) return rows;
  rows.push_back(state.row_np1);
  while (state.time + 1 < steps) {
    state = rca_step_theta(state, theta);
    rows.push_back(state.row_np1);
  }
  return rows;
}

/// Closed forms for the first moments m(1), m(2), m(3) of the H(theta)
/// evolution from (alpha, beta, gamma):
///   m(1) = |g|^2 - |b|^2
///   m(2) = 2 cos^2 t (|g|^2 - |b|^2)
///   m(3) = (3 cos^2 2t + 2 cos 2t + 1)(|g|^2 - |b|^2)/2
///          - sin t sin 2t * Re-sym(a, b+g)/2
template <typename Scalar>
std::array<Scalar, 3> closed_moments(const InitialTriple<Scalar>& triple,
                                     ThetaParam<Scalar> theta) {
  const Scalar t = theta.radians();
  const Scalar co = theta.cos();
  const Scalar cos2t = std::cos(2 * t);
  const Scalar gap = std::norm(triple.gamma) - std::norm(triple.beta);
  const Scalar sum_sym = hermitian_sym(triple.alpha, triple.beta + triple.gamma);

  const Scalar m1 = gap;
  const Scalar m2 = Scalar(2) * co * co * gap;
  const Scalar m3 =
      (Scalar(3) * cos2t * cos2t + Scalar(2) * cos2t + Scalar(1)) * gap / 2 -
      theta.sin() * std::sin(2 * t) * sum_sym / 2;
  return {m1, m2, m3};
}

/// Closed forms for ||X(0)||^2 ... ||X(3)||^2 of the H(theta) evolution.
template <typename Scalar>
std::array<Scalar, 4> small_n_norms(const InitialTriple<Scalar>& triple,
                                    ThetaParam<Scalar> theta) {
  const Scalar co = theta.cos();
  const Scalar co2 = co * co;
  const Scalar s1 = std::norm(triple.alpha);
  const Scalar s2 = std::norm(triple.beta) + std::norm(triple.gamma);
  const Scalar cross = hermitian_sym(triple.beta, triple.gamma);
  const Scalar diff_sym = hermitian_sym(triple.alpha, triple.beta - triple.gamma);

  const Scalar n0 = s1;
  const Scalar n1 = s2;
  const Scalar n2 = s1 + Scalar(2) * co2 * s2 - co2 * cross - co * diff_sym;
  const Scalar one_minus = Scalar(1) - Scalar(2) * co2;
  const Scalar n3 = Scalar(2) * co2 * s1 +
                    (Scalar(2) * co2 * co2 + one_minus * one_minus) * s2 +
                    Scalar(2) * co2 * one_minus * cross +
                    co * (Scalar(1) - Scalar(3) * co2) * diff_sym;
  return {n0, n1, n2, n3};
}

using RcaStated = RcaState<double>;
using RcaCoefficientsd = RcaCoefficients<double>;

}  // namespace qwrca
