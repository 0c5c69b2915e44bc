#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qwrca/amplitude_row.hpp"
#include "qwrca/rca.hpp"
#include "qwrca/rng.hpp"
#include "qwrca/types.hpp"

namespace qwrca {

enum class PhiClass { phi_perp, phi_star };

/// Which initial-state class to test a triple against. phi_star membership
/// depends on the conserved value c and on theta; phi_perp on neither.
template <typename Scalar>
struct ClassSpec {
  PhiClass kind;
  Scalar c = Scalar(0);
  ThetaParam<Scalar> theta{ThetaParam<Scalar>(std::numbers::pi_v<Scalar> / 4)};

  static ClassSpec perp() { return {PhiClass::phi_perp}; }
  static ClassSpec star(Scalar c, ThetaParam<Scalar> theta) {
    if (!(c >= Scalar(0))) throw std::invalid_argument("c must be >= 0");
    return {PhiClass::phi_star, c, theta};
  }
};

/// Membership in the three-branch symmetry class:
///   (a) beta + gamma = 0, or
///   (b) |beta| = |gamma| > 0 and alpha = 0, or
///   (c) |beta| = |gamma| > 0, alpha != 0, and
///       arg(beta) + arg(gamma) - 2 arg(alpha) = pi (mod 2pi).
/// The angle condition is tested phase-free as |u + 1| < tol with
/// u = beta*gamma*conj(alpha)^2 / (|beta||gamma||alpha|^2), which avoids
/// branch cuts of explicit argument extraction.
template <typename Scalar>
bool in_phi_perp(const InitialTriple<Scalar>& t, Scalar tol = Scalar(kDefaultTol)) {
  if (std::abs(t.beta + t.gamma) <= tol) return true;

  const Scalar mb = std::abs(t.beta);
  const Scalar mg = std::abs(t.gamma);
  const Scalar ma = std::abs(t.alpha);
  if (std::abs(mb - mg) > tol || mb <= tol) return false;
  if (ma <= tol) return true;

  const std::complex<Scalar> u =
      t.beta * t.gamma * std::conj(t.alpha) * std::conj(t.alpha) /
      (mb * mg * ma * ma);
  return std::abs(u + std::complex<Scalar>(1)) <= tol;
}

/// Membership in the conservation class at level c:
///   |alpha|^2 = c,  |beta|^2 + |gamma|^2 = c,
///   beta*conj(gamma) + conj(beta)*gamma = 0,
///   alpha*(conj(beta)-conj(gamma)) + conj(alpha)*(beta-gamma) = 2c cos(theta).
/// c = 0 admits exactly the zero triple.
template <typename Scalar>
bool in_phi_star(const InitialTriple<Scalar>& t, Scalar c,
                 ThetaParam<Scalar> theta, Scalar tol = Scalar(kDefaultTol)) {
  theta.require_interior("in_phi_star");
  if (!(c >= Scalar(0))) throw std::invalid_argument("c must be >= 0");
  if (c == Scalar(0)) {
    return std::abs(t.alpha) <= tol && std::abs(t.beta) <= tol &&
           std::abs(t.gamma) <= tol;
  }
  return std::abs(std::norm(t.alpha) - c) <= tol &&
         std::abs(std::norm(t.beta) + std::norm(t.gamma) - c) <= tol &&
         std::abs(hermitian_sym(t.beta, t.gamma)) <= tol &&
         std::abs(hermitian_sym(t.alpha, t.beta - t.gamma) -
                  2 * c * theta.cos()) <= tol;
}

template <typename Scalar>
bool is_member(const InitialTriple<Scalar>& t, const ClassSpec<Scalar>& spec,
               Scalar tol = Scalar(kDefaultTol)) {
  return spec.kind == PhiClass::phi_perp ? in_phi_perp(t, tol)
                                         : in_phi_star(t, spec.c, spec.theta, tol);
}

/// Raw ingredients of the three phi_perp branches, for reporting.
template <typename Scalar>
struct PhiPerpResiduals {
  Scalar beta_plus_gamma;    ///< |beta + gamma|
  Scalar modulus_mismatch;   ///< | |beta| - |gamma| |
  Scalar alpha_modulus;      ///< |alpha|
  Scalar phase_offset;       ///< |u + 1| of the angle condition; NaN if undefined
};

template <typename Scalar>
PhiPerpResiduals<Scalar> phi_perp_residuals(const InitialTriple<Scalar>& t) {
  const Scalar mb = std::abs(t.beta);
  const Scalar mg = std::abs(t.gamma);
  const Scalar ma = std::abs(t.alpha);
  Scalar phase = std::numeric_limits<Scalar>::quiet_NaN();
  if (mb > Scalar(0) && mg > Scalar(0) && ma > Scalar(0)) {
    const std::complex<Scalar> u =
        t.beta * t.gamma * std::conj(t.alpha) * std::conj(t.alpha) /
        (mb * mg * ma * ma);
    phase = std::abs(u + std::complex<Scalar>(1));
  }
  return {std::abs(t.beta + t.gamma), std::abs(mb - mg), ma, phase};
}

/// Residuals of the four phi_star(c) conditions, for reporting.
template <typename Scalar>
struct PhiStarResiduals {
  Scalar alpha_norm;       ///< | |alpha|^2 - c |
  Scalar beta_gamma_norm;  ///< | |beta|^2 + |gamma|^2 - c |
  Scalar cross_term;       ///< | beta conj(gamma) + conj(beta) gamma |
  Scalar phase_term;       ///< | sym(alpha, beta - gamma) - 2c cos(theta) |
};

template <typename Scalar>
PhiStarResiduals<Scalar> phi_star_residuals(const InitialTriple<Scalar>& t,
                                            Scalar c, ThetaParam<Scalar> theta) {
  theta.require_interior("phi_star_residuals");
  return {std::abs(std::norm(t.alpha) - c),
          std::abs(std::norm(t.beta) + std::norm(t.gamma) - c),
          std::abs(hermitian_sym(t.beta, t.gamma)),
          std::abs(hermitian_sym(t.alpha, t.beta - t.gamma) - 2 * c * theta.cos())};
}

template <typename Scalar>
struct EmpiricalResult {
  bool member;
  Scalar max_violation;
};

/// max over n <= n_max, all k, of | |X_k(n)| - |X_{-k}(n)| |.
template <typename Scalar>
EmpiricalResult<Scalar> empirical_symmetric(const InitialTriple<Scalar>& t,
                                            ThetaParam<Scalar> theta,
                                            std::int64_t n_max,
                                            Scalar tol = Scalar(1e-10)) {
  Scalar worst{};
  for (const auto& row : rca_evolve(t, theta, n_max)) {
    for (std::int64_t k = 0; k <= row.last_site(); ++k) {
      worst = std::max(worst, std::abs(std::abs(row.at(k)) - std::abs(row.at(-k))));
    }
  }
  return {worst < tol, worst};
}

/// max over n <= n_max of |sum_k k |X_k(n)|^2|.
template <typename Scalar>
EmpiricalResult<Scalar> empirical_zero_moment(const InitialTriple<Scalar>& t,
                                              ThetaParam<Scalar> theta,
                                              std::int64_t n_max,
                                              Scalar tol = Scalar(1e-10)) {
  Scalar worst{};
  for (const auto& row : rca_evolve(t, theta, n_max)) {
    worst = std::max(worst, std::abs(first_moment(row)));
  }
  return {worst < tol, worst};
}

/// max over n <= n_max of | ||X(n)||^2 - c |.
template <typename Scalar>
EmpiricalResult<Scalar> empirical_conserved(const InitialTriple<Scalar>& t,
                                            ThetaParam<Scalar> theta, Scalar c,
                                            std::int64_t n_max,
                                            Scalar tol = Scalar(1e-10)) {
  Scalar worst{};
  for (const auto& row : rca_evolve(t, theta, n_max)) {
    worst = std::max(worst, std::abs(squared_norm(row) - c));
  }
  return {worst < tol, worst};
}

/// Draws a member of the symmetry class, hitting each of the three branches
/// with positive probability.
inline InitialTriple<double> sample_phi_perp(Rng& rng) {
  const double branch = rng.uniform();
  if (branch < 1.0 / 3) {
    const auto beta = rng.disc_point();
    return {rng.disc_point(), beta, -beta};
  }
  if (branch < 2.0 / 3) {
    const auto beta = rng.uniform(0.1, 1.0) * rng.unit_phase();
    return {{}, beta, rng.unit_phase() * std::abs(beta)};
  }
  const double r = rng.uniform(0.1, 1.0);
  const double theta_a = rng.angle();
  const double theta_b = rng.angle();
  const double theta_g = std::numbers::pi + 2 * theta_a - theta_b;
  return {std::polar(rng.uniform(0.1, 1.0), theta_a), std::polar(r, theta_b),
          std::polar(r, theta_g)};
}

/// Draws a member of the conservation class at level c > 0 by direct
/// parameterization: |alpha| = sqrt(c); beta, gamma with purely imaginary
/// beta*conj(gamma) and |beta|^2 + |gamma|^2 = c; the alpha phase solves the
/// remaining cross-term equation (always solvable since |beta - gamma| =
/// sqrt(c) when the cross term vanishes).
inline InitialTriple<double> sample_phi_star(double c, ThetaParam<double> theta,
                                             Rng& rng) {
  theta.require_interior("sample_phi_star");
  if (!(c > 0)) throw std::invalid_argument("sample_phi_star requires c > 0");
  const double root_c = std::sqrt(c);
  const double split = rng.uniform(0.0, std::numbers::pi / 2);
  const double phase = rng.angle();
  const double quarter =
      rng.uniform() < 0.5 ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  const std::complex<double> beta = std::polar(root_c * std::cos(split), phase);
  const std::complex<double> gamma =
      std::polar(root_c * std::sin(split), phase + quarter);

  const std::complex<double> w = beta - gamma;
  const double ratio = root_c * std::cos(theta.radians()) / std::abs(w);
  if (std::abs(ratio) > 1.0) {
    // Unreachable for exact inputs; guards against pathological rounding.
    throw std::runtime_error("sample_phi_star: phase equation unsatisfiable");
  }
  const double offset = std::acos(ratio);
  const double theta_a =
      std::arg(w) + (rng.uniform() < 0.5 ? offset : -offset);
  return {std::polar(root_c, theta_a), beta, gamma};
}

/// Uniform triple from the unit polydisc, rejected until it is clearly
/// outside the symmetry class: some closed-form moment m(1..3) must exceed
/// witness_floor so downstream checks see a quantitative violation.
inline InitialTriple<double> sample_non_perp(ThetaParam<double> theta, Rng& rng,
                                             double witness_floor = 1e-6) {
  for (;;) {
    const InitialTriple<double> t{rng.disc_point(), rng.disc_point(),
                                  rng.disc_point()};
    if (in_phi_perp(t)) continue;
    const auto m = closed_moments(t, theta);
    if (std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])}) >
        witness_floor) {
      return t;
    }
  }
}

/// Uniform triple from the unit polydisc, rejected until some small-n norm
/// ||X(0..3)||^2 deviates from c by more than witness_floor.
inline InitialTriple<double> sample_non_star(double c, ThetaParam<double> theta,
                                             Rng& rng,
                                             double witness_floor = 1e-6) {
  for (;;) {
    const InitialTriple<double> t{rng.disc_point(), rng.disc_point(),
                                  rng.disc_point()};
    if (in_phi_star(t, c, theta)) continue;
    const auto norms = small_n_norms(t, theta);
    double witness = 0;
    for (const double v : norms) witness = std::max(witness, std::abs(v - c));
    if (witness > witness_floor) return t;
  }
}

struct TheoremReport {
  InitialTriple<double> triple;
  bool predicted_member;
  bool empirical_member;
  double max_violation;
  std::int64_t steps_checked;

  bool consistent() const { return predicted_member == empirical_member; }
};

/// Symmetry theorem check: class members must keep |X_k(n)| = |X_{-k}(n)|
/// and m(n) = 0 up to n_max; non-members must show a nonzero moment within
/// three steps.
inline std::vector<TheoremReport> check_theorem2(ThetaParam<double> theta,
                                                 std::int64_t n_max,
                                                 std::int64_t num_samples,
                                                 std::uint64_t seed) {
  theta.require_interior("check_theorem2");
  std::vector<TheoremReport> reports;
  reports.reserve(static_cast<std::size_t>(2 * num_samples));
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const auto t = sample_phi_perp(rng);
    const auto sym = empirical_symmetric(t, theta, n_max);
    const auto mom = empirical_zero_moment(t, theta, n_max);
    reports.push_back({t, true, sym.member && mom.member,
                       std::max(sym.max_violation, mom.max_violation), n_max});
  }
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(num_samples + i));
    const auto t = sample_non_perp(theta, rng);
    const auto mom = empirical_zero_moment(t, theta, 3);
    reports.push_back({t, false, mom.member, mom.max_violation, 3});
  }
  return reports;
}

/// Conservation theorem check: members of the class at level c must hold
/// ||X(n)||^2 = c up to n_max; non-members must deviate within three steps.
inline std::vector<TheoremReport> check_theorem3(ThetaParam<double> theta,
                                                 double c, std::int64_t n_max,
                                                 std::int64_t num_samples,
                                                 std::uint64_t seed) {
  theta.require_interior("check_theorem3");
  if (!(c > 0)) throw std::invalid_argument("check_theorem3 requires c > 0");
  std::vector<TheoremReport> reports;
  reports.reserve(static_cast<std::size_t>(2 * num_samples));
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const auto t = sample_phi_star(c, theta, rng);
    const auto cons = empirical_conserved(t, theta, c, n_max);
    reports.push_back({t, true, cons.member, cons.max_violation, n_max});
  }
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(num_samples + i));
    const auto t = sample_non_star(c, theta, rng);
    const auto cons = empirical_conserved(t, theta, c, 3);
    reports.push_back({t, false, cons.member, cons.max_violation, 3});
  }
  return reports;
}

inline bool all_consistent(const std::vector<TheoremReport>& reports) {
  for (const auto& r : reports) {
    if (!r.consistent()) return false;
  }
  return true;
}

struct DisjointnessCounterexample {
  InitialTriple<double> triple;
  PhiClass sampled_from;
};

/// Result of the disjointness check between the symmetry class and the
/// conservation class at level c > 0. A passing report has no
/// counterexamples.
struct DisjointnessReport {
  double c;
  double theta;
  std::int64_t samples_per_side;
  std::vector<DisjointnessCounterexample> counterexamples;

  bool pass() const { return counterexamples.empty(); }
};

inline DisjointnessReport check_corollary4(double c, ThetaParam<double> theta,
                                           std::int64_t num_samples,
                                           std::uint64_t seed) {
  theta.require_interior("check_corollary4");
  if (!(c > 0)) throw std::invalid_argument("check_corollary4 requires c > 0");
  DisjointnessReport report{c, theta.radians(), num_samples, {}};
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(i));
    const auto t = sample_phi_perp(rng);
    if (in_phi_star(t, c, theta)) {
      report.counterexamples.push_back({t, PhiClass::phi_perp});
    }
  }
  for (std::int64_t i = 0; i < num_samples; ++i) {
    Rng rng = Rng::split(seed, static_cast<std::uint64_t>(num_samples + i));
    const auto t = sample_phi_star(c, theta, rng);
    if (in_phi_perp(t)) {
      report.counterexamples.push_back({t, PhiClass::phi_star});
    }
  }
  return report;
}

}  // namespace qwrca
