#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qwrca {

template <typename Scalar>
struct QuadratureResult {
  Scalar value;
  Scalar error;  ///< accumulated per-panel error estimates
  bool converged;
  std::int64_t panels;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

template <typename Scalar, typename F>
void gk15_panel(F&& f, Scalar a, Scalar b, Scalar& kronrod, Scalar& err) {
  const Scalar mid = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  Scalar k15{};
  Scalar g7{};
  for (int i = 0; i < 8; ++i) {
    const Scalar node = half * Scalar(kKronrodNodes[i]);
    const Scalar fsum =
        i == 7 ? f(mid) : f(mid - node) + f(mid + node);
    k15 += Scalar(kKronrodWeights[i]) * fsum;
    if (i % 2 == 1) g7 += Scalar(kGaussWeights[i / 2]) * fsum;
  }
  kronrod = k15 * half;
  err = std::abs((k15 - g7) * half);
}

}  // namespace detail

/// Adaptive bisection with a Gauss-Kronrod 7/15 rule per panel. The interval
/// is pre-split into min_panels equal panels before refinement; oscillatory
/// integrands need roughly one panel per period to keep the embedded error
/// estimate honest.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b,
                                            Scalar abs_tol,
                                            std::int64_t min_panels = 4,
                                            int max_depth = 24) {
  struct Panel {
    Scalar a, b, tol;
    int depth;
  };
  if (min_panels < 1) min_panels = 1;
  std::vector<Panel> stack;
  stack.reserve(64);
  const Scalar width = (b - a) / Scalar(min_panels);
  for (std::int64_t i = min_panels; i-- > 0;) {
    stack.push_back({a + Scalar(i) * width, a + Scalar(i + 1) * width,
                     abs_tol / Scalar(min_panels), 0});
  }
  stack.front().b = b;  // avoid a rounding gap at the right endpoint

  QuadratureResult<Scalar> result{Scalar(0), Scalar(0), true, 0};
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    Scalar value, err;
    detail::gk15_panel(f, p.a, p.b, value, err);
    if (err <= p.tol || p.depth >= max_depth) {
      result.value += value;
      result.error += err;
      result.panels += 1;
      if (err > p.tol) result.converged = false;
      continue;
    }
    const Scalar mid = (p.a + p.b) / 2;
    stack.push_back({p.a, mid, p.tol / 2, p.depth + 1});
    stack.push_back({mid, p.b, p.tol / 2, p.depth + 1});
  }
  return result;
}

}  // namespace qwrca
