#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "qwrca/amplitude_row.hpp"
#include "qwrca/types.hpp"

namespace qwrca {

/// Walker state at one time step: the two chirality rows share the aligned
/// window [-n, n]. Off-parity cells inside the window are exactly zero.
template <typename Scalar>
struct QwState {
  std::int64_t time = 0;
  AmplitudeRow<Scalar> left;
  AmplitudeRow<Scalar> right;
};

template <typename Scalar>
struct ChiralityNorms {
  Scalar left_sq;
  Scalar right_sq;
};

enum class Chirality { left, right };

template <typename Scalar>
QwState<Scalar> qw_initial(const Qubit<Scalar>& qubit) {
  return {0, AmplitudeRow<Scalar>::single(0, qubit.left()),
          AmplitudeRow<Scalar>::single(0, qubit.right())};
}

/// One step of the coined walk:
///   L_k(n+1) = a*L_{k+1}(n) + b*R_{k+1}(n)
///   R_k(n+1) = c*L_{k-1}(n) + d*R_{k-1}(n)
template <typename Scalar>
QwState<Scalar> qw_step(const QwState<Scalar>& state,
                        const UnitaryCoin<Scalar>& coin) {
  using Vector = typename AmplitudeRow<Scalar>::Vector;
  const Eigen::Index m = state.left.size();
  const std::int64_t first = state.left.first_site() - 1;

  Vector next_left = Vector::Zero(m + 2);
  Vector next_right = Vector::Zero(m + 2);
  next_left.head(m) = coin.a() * state.left.values() + coin.b() * state.right.values();
  next_right.tail(m) = coin.c() * state.left.values() + coin.d() * state.right.values();

  return {state.time + 1, AmplitudeRow<Scalar>(first, std::move(next_left)),
          AmplitudeRow<Scalar>(first, std::move(next_right))};
}

template <typename Scalar>
QwState<Scalar> qw_evolve(const Qubit<Scalar>& qubit,
                          const UnitaryCoin<Scalar>& coin, std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("step count must be >= 0");
  QwState<Scalar> state = qw_initial(qubit);
  for (std::int64_t n = 0; n < steps; ++n) state = qw_step(state, coin);
  return state;
}

/// Per-site probability |L_k|^2 + |R_k|^2; sites with exactly zero mass are
/// omitted.
template <typename Scalar>
std::map<std::int64_t, Scalar> qw_distribution(const QwState<Scalar>& state) {
  std::map<std::int64_t, Scalar> dist;
  const std::int64_t first = state.left.first_site();
  for (std::int64_t k = first; k <= state.left.last_site(); ++k) {
    const Scalar p = std::norm(state.left.at(k)) + std::norm(state.right.at(k));
    if (p != Scalar(0)) dist[k] = p;
  }
  return dist;
}

template <typename Scalar>
ChiralityNorms<Scalar> chirality_norms(const QwState<Scalar>& state) {
  return {squared_norm(state.left), squared_norm(state.right)};
}

/// Initial triple whose lattice evolution reproduces the chosen chirality
/// row of the walk at every site and step:
///   left:  (L_0(0), a*L_0(0) + b*R_0(0), 0)
///   right: (R_0(0), 0, c*L_0(0) + d*R_0(0))
template <typename Scalar>
InitialTriple<Scalar> qw_to_rca_triple(const Qubit<Scalar>& qubit,
                                       const UnitaryCoin<Scalar>& coin,
                                       Chirality chirality) {
  if (chirality == Chirality::left) {
    return {qubit.left(), coin.a() * qubit.left() + coin.b() * qubit.right(),
            {}};
  }
  return {qubit.right(), {},
          coin.c() * qubit.left() + coin.d() * qubit.right()};
}

/// Long-time limits of the two chirality norms for the H(theta) walk, as
/// explicit functions of theta and the initial qubit. The two values sum
/// to 1.
template <typename Scalar>
ChiralityNorms<Scalar> chirality_limits(const Qubit<Scalar>& qubit,
                                        ThetaParam<Scalar> theta) {
  theta.require_interior("chirality_limits");
  const Scalar co = theta.cos();
  const Scalar si = theta.sin();
  const Scalar l2 = std::norm(qubit.left());
  const Scalar r2 = std::norm(qubit.right());
  const Scalar cross = hermitian_sym(qubit.left(), qubit.right());
  const Scalar damp = (Scalar(1) - si) / co;

  const Scalar lim_left =
      ((Scalar(1) + co * co) * l2 + si * si * r2 + si * co * cross -
       (Scalar(2) * co * l2 + si * cross) * damp) /
      (Scalar(2) * si);
  const Scalar lim_right =
      ((Scalar(1) + co * co) * r2 + si * si * l2 - si * co * cross -
       (Scalar(2) * co * r2 - si * cross) * damp) /
      (Scalar(2) * si);
  return {lim_left, lim_right};
}

/// Mean of the two chirality norms over steps [first_step, last_step],
/// inclusive. Damps the alternating-sign component of the finite-time norm
/// when probing convergence to chirality_limits.
template <typename Scalar>
ChiralityNorms<Scalar> mean_chirality_norms(const Qubit<Scalar>& qubit,
                                            const UnitaryCoin<Scalar>& coin,
                                            std::int64_t first_step,
                                            std::int64_t last_step) {
  if (first_step < 0 || last_step < first_step) {
    throw std::invalid_argument("window [first_step, last_step] is empty");
  }
  QwState<Scalar> state = qw_evolve(qubit, coin, first_step);
  Scalar sum_left{}, sum_right{};
  for (std::int64_t n = first_step;; ++n) {
    const auto norms = chirality_norms(state);
    sum_left += norms.left_sq;
    sum_right += norms.right_sq;
    if (n == last_step) break;
    state = qw_step(state, coin);
  }
  const Scalar count = Scalar(last_step - first_step + 1);
  return {sum_left / count, sum_right / count};
}

using QwStated = QwState<double>;
using ChiralityNormsd = ChiralityNorms<double>;

}  // namespace qwrca
