#include "qwrca/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qwrca/qw.hpp"
#include "qwrca/rca.hpp"
#include "qwrca/rng.hpp"
#include "qwrca/spectral.hpp"
#include "qwrca/state_classes.hpp"

namespace qwrca {
namespace {

constexpr double kPi = std::numbers::pi;

struct Sizes {
  std::int64_t conservation_qubits;
  std::int64_t conservation_steps;
  std::int64_t coupling_cases;
  std::int64_t class_samples;      // theorem 2/3 sample counts
  std::int64_t star_steps;         // theorem 3 horizon
  std::int64_t norio_triples;      // per theta
  std::int64_t norio_max_n;
  std::int64_t hn_grid;
  std::int64_t hn_max_n;
  std::int64_t parseval_cases;
  std::int64_t limit_window_start;
  std::int64_t disjoint_samples;
  std::int64_t roundtrip_cases;
  std::int64_t lemma_cases;
};

Sizes full_sizes() {
  return {20, 1000, 10, 100, 500, 50, 50, 10000, 200,
          10, 2000, 1000, 20, 20};
}

Sizes quick_sizes() {
  return {3, 120, 3, 12, 60, 4, 12, 500, 40,
          3, 400, 40, 5, 5};
}

Qubit<double> random_qubit(Rng& rng) {
  const std::complex<double> l = rng.disc_point();
  const std::complex<double> r = rng.disc_point();
  const double norm = std::sqrt(std::norm(l) + std::norm(r));
  if (norm < 1e-3) return Qubit<double>(1, 0);
  return Qubit<double>(l / norm, r / norm);
}

InitialTriple<double> random_triple(Rng& rng) {
  return {rng.disc_point(), rng.disc_point(), rng.disc_point()};
}

ThetaParam<double> random_interior_theta(Rng& rng) {
  return ThetaParam<double>(rng.uniform(0.05, kPi / 2 - 0.05));
}

// 1. Total probability stays at 1 through long evolutions.
CheckResult check_probability_conservation(const Sizes& sz, std::uint64_t seed) {
  double worst = 0;
  for (int ti = 0; ti < 10; ++ti) {
    const ThetaParam<double> theta((ti + 1) * kPi / 22);
    const auto coin = make_theta_coin(theta);
    for (std::int64_t qi = 0; qi < sz.conservation_qubits; ++qi) {
      Rng rng = Rng::split(seed, 100 * ti + qi);
      auto state = qw_initial(random_qubit(rng));
      for (std::int64_t n = 0; n < sz.conservation_steps; ++n) {
        state = qw_step(state, coin);
        const auto norms = chirality_norms(state);
        worst = std::max(worst, std::abs(norms.left_sq + norms.right_sq - 1.0));
      }
    }
  }
  return {"probability_conservation", worst < 1e-12, worst, 1e-12,
          "10 thetas x random qubits, every step to the horizon"};
}

// 2. The coupled triple reproduces each chirality row at every site/step.
CheckResult check_chirality_coupling(const Sizes& sz, std::uint64_t seed) {
  double worst = 0;
  for (std::int64_t i = 0; i < sz.coupling_cases; ++i) {
    Rng rng = Rng::split(seed, i);
    const auto theta = random_interior_theta(rng);
    const auto coin = make_theta_coin(theta);
    const auto qubit = random_qubit(rng);

    auto left_state = rca_initial(qw_to_rca_triple(qubit, coin, Chirality::left));
    auto right_state = rca_initial(qw_to_rca_triple(qubit, coin, Chirality::right));
    auto walk = qw_initial(qubit);
    worst = std::max({worst, max_abs_diff(left_state.row_n, walk.left),
                      max_abs_diff(right_state.row_n, walk.right)});
    for (std::int64_t n = 1; n <= 100; ++n) {
      walk = qw_step(walk, coin);
      worst = std::max({worst, max_abs_diff(left_state.row_np1, walk.left),
                        max_abs_diff(right_state.row_np1, walk.right)});
      left_state = rca_step_theta(left_state, theta);
      right_state = rca_step_theta(right_state, theta);
    }
  }
  return {"chirality_coupling", worst < 1e-12, worst, 1e-12,
          "lattice rows vs both walk chiralities, n <= 100"};
}

// 3. Hand-evaluated two-step Hadamard distribution from (1, 0).
CheckResult check_hadamard_two_step(const Sizes&, std::uint64_t) {
  const auto coin = make_theta_coin(ThetaParam<double>(kPi / 4));
  const auto state = qw_evolve(Qubit<double>(1, 0), coin, 2);
  const auto dist = qw_distribution(state);
  double worst = 0;
  for (const auto& [site, expected] :
       std::initializer_list<std::pair<std::int64_t, double>>{
           {-2, 0.25}, {0, 0.5}, {2, 0.25}}) {
    const auto it = dist.find(site);
    worst = std::max(worst, it == dist.end()
                                ? expected
                                : std::abs(it->second - expected));
  }
  for (const auto& [site, p] : dist) {
    if (site != -2 && site != 0 && site != 2) worst = std::max(worst, p);
  }
  return {"hadamard_two_step", worst < 1e-15, worst, 1e-15,
          "distribution {-2: 1/4, 0: 1/2, 2: 1/4}"};
}

// 4. Symmetry theorem: members stay symmetric with zero moments; sampled
// non-members are caught by the closed-form moments, which in turn match
// direct simulation.
CheckResult check_theorem2_suite(const Sizes& sz, std::uint64_t seed) {
  double worst_member = 0;
  double closed_vs_sim = 0;
  bool ok = true;
  for (std::int64_t i = 0; i < sz.class_samples; ++i) {
    Rng rng = Rng::split(seed, i);
    const auto theta = random_interior_theta(rng);
    const auto t = sample_phi_perp(rng);
    const auto sym = empirical_symmetric(t, theta, 100);
    const auto mom = empirical_zero_moment(t, theta, 100);
    ok = ok && sym.member && mom.member;
    worst_member = std::max({worst_member, sym.max_violation, mom.max_violation});

    const auto closed = closed_moments(t, theta);
    const auto rows = rca_evolve(t, theta, 3);
    for (int n = 1; n <= 3; ++n) {
      closed_vs_sim = std::max(closed_vs_sim,
                               std::abs(closed[n - 1] - first_moment(rows[n])));
    }
  }
  double weakest_witness = 1.0;
  for (std::int64_t i = 0; i < sz.class_samples; ++i) {
    Rng rng = Rng::split(seed, sz.class_samples + i);
    const auto theta = random_interior_theta(rng);
    const auto t = sample_non_perp(theta, rng);
    const auto closed = closed_moments(t, theta);
    const double witness =
        std::max({std::abs(closed[0]), std::abs(closed[1]), std::abs(closed[2])});
    ok = ok && witness > 1e-10;
    weakest_witness = std::min(weakest_witness, witness);

    const auto rows = rca_evolve(t, theta, 3);
    for (int n = 1; n <= 3; ++n) {
      closed_vs_sim = std::max(closed_vs_sim,
                               std::abs(closed[n - 1] - first_moment(rows[n])));
    }
  }
  ok = ok && worst_member < 1e-10 && closed_vs_sim < 1e-12;
  return {"theorem2_symmetry_zero_moment", ok,
          std::max(worst_member, closed_vs_sim), 1e-10,
          "members to n=100; non-member witness floor " +
              std::to_string(weakest_witness)};
}

// 5. Conservation theorem: members hold the norm; small-n closed forms
// match simulation.
CheckResult check_theorem3_suite(const Sizes& sz, std::uint64_t seed) {
  const std::array<double, 5> thetas = {kPi / 12, kPi / 6, kPi / 4, kPi / 3,
                                        5 * kPi / 12};
  double worst = 0;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    const ThetaParam<double> theta(thetas[ti]);
    for (std::int64_t i = 0; i < sz.class_samples / 2; ++i) {
      Rng rng = Rng::split(seed, 1000 * (ti + 1) + i);
      const auto t = sample_phi_star(0.5, theta, rng);
      const auto cons = empirical_conserved(t, theta, 0.5, sz.star_steps);
      worst = std::max(worst, cons.max_violation);
    }
  }
  double closed_vs_sim = 0;
  for (std::int64_t i = 0; i < sz.class_samples; ++i) {
    Rng rng = Rng::split(seed, 777000 + i);
    const auto theta = random_interior_theta(rng);
    const auto t = random_triple(rng);
    const auto closed = small_n_norms(t, theta);
    const auto rows = rca_evolve(t, theta, 3);
    for (int n = 0; n <= 3; ++n) {
      closed_vs_sim = std::max(closed_vs_sim,
                               std::abs(closed[n] - squared_norm(rows[n])));
    }
  }
  const bool ok = worst < 1e-10 && closed_vs_sim < 1e-12;
  return {"theorem3_conservation", ok, std::max(worst, closed_vs_sim), 1e-10,
          "members at c=1/2 over 5 thetas; closed norms vs simulation"};
}

// 6. Exact norm decomposition total matches direct summation; members have
// vanishing oscillatory part.
CheckResult check_norm_decomposition(const Sizes& sz, std::uint64_t seed) {
  const std::array<double, 5> thetas = {kPi / 12, kPi / 6, kPi / 4, kPi / 3,
                                        5 * kPi / 12};
  double worst = 0;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    const ThetaParam<double> theta(thetas[ti]);
    for (std::int64_t i = 0; i < sz.norio_triples; ++i) {
      Rng rng = Rng::split(seed, 1000 * (ti + 1) + i);
      const auto t = random_triple(rng);
      const auto rows = rca_evolve(t, theta, sz.norio_max_n);
      for (std::int64_t n = 0; n <= sz.norio_max_n; ++n) {
        const auto decomp = closed_form_norm(t, theta, n);
        worst = std::max(worst, std::abs(decomp.total() - squared_norm(rows[n])));
      }
    }
  }
  double worst_osc = 0;
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    const ThetaParam<double> theta(thetas[ti]);
    for (const double c : {0.25, 0.5, 1.0}) {
      Rng rng = Rng::split(seed, 555000 + 10 * ti + static_cast<int>(4 * c));
      const auto t = sample_phi_star(c, theta, rng);
      for (std::int64_t n = 0; n <= sz.norio_max_n; ++n) {
        worst_osc =
            std::max(worst_osc, std::abs(closed_form_norm(t, theta, n).oscillatory));
      }
    }
  }
  const bool ok = worst < 1e-8 && worst_osc < 1e-8;
  return {"norm_decomposition_closed_form", ok, std::max(worst, worst_osc), 1e-8,
          "steady+oscillatory vs direct sums, n <= " +
              std::to_string(sz.norio_max_n)};
}

// 7. The h_n cancellation identity on a dense grid.
CheckResult check_hn_identity(const Sizes& sz, std::uint64_t) {
  double worst = 0;
  for (std::int64_t n = 0; n <= sz.hn_max_n; ++n) {
    for (std::int64_t j = 0; j < sz.hn_grid; ++j) {
      const double x = -kPi / 2 * static_cast<double>(j) /
                       static_cast<double>(sz.hn_grid - 1);
      worst = std::max(worst, std::abs(h_n_value(x, n)));
    }
  }
  return {"h_n_identity", worst < 1e-13, worst, 1e-13,
          std::to_string(sz.hn_grid) + " x-points x n <= " +
              std::to_string(sz.hn_max_n)};
}

// 8. Parseval: spectral norm equals the spatial sum.
CheckResult check_parseval(const Sizes& sz, std::uint64_t seed) {
  double worst = 0;
  for (std::int64_t i = 0; i < sz.parseval_cases; ++i) {
    Rng rng = Rng::split(seed, i);
    const auto theta = random_interior_theta(rng);
    const auto t = random_triple(rng);
    const auto rows = rca_evolve(t, theta, 100);
    for (std::int64_t n = 0; n <= 100; ++n) {
      worst = std::max(worst, std::abs(parseval_norm(t, theta, n) -
                                       squared_norm(rows[n])));
    }
  }
  return {"parseval", worst < 1e-11, worst, 1e-11,
          "trapezoid spectral norm vs direct sum, n <= 100"};
}

// 9. Long-time chirality limits: window average for the asymmetric qubit,
// exact 1/2 at every step for the symmetric one.
CheckResult check_long_time_limits(const Sizes& sz, std::uint64_t) {
  const std::array<double, 3> thetas = {kPi / 6, kPi / 4, kPi / 3};
  double worst_window = 0;
  double worst_exact = 0;
  const Qubit<double> asym(1, 0);
  const Qubit<double> sym(std::complex<double>(1 / std::sqrt(2.0), 0),
                          std::complex<double>(0, 1 / std::sqrt(2.0)));
  for (const double tv : thetas) {
    const ThetaParam<double> theta(tv);
    const auto coin = make_theta_coin(theta);

    const auto window = mean_chirality_norms(asym, coin, sz.limit_window_start,
                                             sz.limit_window_start + 100);
    worst_window =
        std::max(worst_window, std::abs(window.left_sq - (1 - std::sin(tv) / 2)));

    auto state = qw_initial(sym);
    for (std::int64_t n = 0; n <= 200; ++n) {
      const auto norms = chirality_norms(state);
      worst_exact = std::max({worst_exact, std::abs(norms.left_sq - 0.5),
                              std::abs(norms.right_sq - 0.5)});
      state = qw_step(state, coin);
    }
  }
  const bool ok = worst_window < 1e-3 && worst_exact < 1e-12;
  return {"long_time_limits", ok, std::max(worst_window, worst_exact), 1e-3,
          "window mean at n ~ " + std::to_string(sz.limit_window_start) +
              " vs 1 - sin(theta)/2; symmetric qubit pinned at 1/2"};
}

// 10. Symmetry class and conservation class never overlap.
CheckResult check_disjointness(const Sizes& sz, std::uint64_t seed) {
  std::int64_t counterexamples = 0;
  for (const double c : {0.25, 0.5, 1.0}) {
    for (int ti = 0; ti < 5; ++ti) {
      const ThetaParam<double> theta((ti + 1) * kPi / 12);
      const auto report = check_corollary4(
          c, theta, sz.disjoint_samples,
          seed + static_cast<std::uint64_t>(1000 * c) + 17 * ti);
      counterexamples += static_cast<std::int64_t>(report.counterexamples.size());
    }
  }
  return {"corollary4_disjointness", counterexamples == 0,
          static_cast<double>(counterexamples), 0.0,
          "membership co-occurrences over c in {1/4, 1/2, 1} x 5 thetas"};
}

// 11. Forward/backward round trips recover the initial rows.
CheckResult check_reversibility(const Sizes& sz, std::uint64_t seed) {
  double worst = 0;
  for (std::int64_t i = 0; i < sz.roundtrip_cases; ++i) {
    Rng rng = Rng::split(seed, i);
    const auto theta = random_interior_theta(rng);
    const auto t = random_triple(rng);
    const auto initial = rca_initial(t);
    auto state = initial;
    for (int n = 0; n < 100; ++n) state = rca_step_theta(state, theta);
    for (int n = 0; n < 100; ++n) state = rca_step_back(state, theta);
    worst = std::max({worst, max_abs_diff(state.row_n, initial.row_n),
                      max_abs_diff(state.row_np1, initial.row_np1)});
  }
  return {"reversibility", worst < 1e-9, worst, 1e-9,
          "100 steps forward then 100 back, random triples"};
}

// 12. Both lemma symmetry relations as complex equalities.
CheckResult check_lemma1(const Sizes& sz, std::uint64_t seed) {
  double worst = 0;
  for (std::int64_t i = 0; i < sz.lemma_cases; ++i) {
    Rng rng = Rng::split(seed, i);
    const auto theta = random_interior_theta(rng);
    const auto beta = rng.disc_point();
    const InitialTriple<double> t1{rng.disc_point(), beta, -beta};
    const auto rows1 = rca_evolve(t1, theta, 100);
    for (std::size_t n = 0; n < rows1.size(); ++n) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      for (std::int64_t k = rows1[n].first_site(); k <= rows1[n].last_site(); ++k) {
        worst = std::max(worst,
                         std::abs(rows1[n].at(k) - sign * rows1[n].at(-k)));
      }
    }

    const double beta_real = rng.uniform(-1.0, 1.0);
    const double xi = rng.angle();
    const std::complex<double> phase{std::cos(xi), std::sin(xi)};
    const InitialTriple<double> t2{{}, beta_real, phase * beta_real};
    const auto rows2 = rca_evolve(t2, theta, 100);
    for (std::size_t n = 0; n < rows2.size(); ++n) {
      const double sign = n % 2 == 0 ? -1.0 : 1.0;
      for (std::int64_t k = rows2[n].first_site(); k <= rows2[n].last_site(); ++k) {
        worst = std::max(worst, std::abs(rows2[n].at(k) -
                                         sign * phase * std::conj(rows2[n].at(-k))));
      }
    }
  }
  return {"lemma1_symmetries", worst < 1e-13, worst, 1e-13,
          "both reflection relations, n <= 100"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const Sizes sz = options.quick ? quick_sizes() : full_sizes();
  const std::uint64_t seed = options.seed;
  std::vector<CheckResult> results;
  results.push_back(check_probability_conservation(sz, seed + 1));
  results.push_back(check_chirality_coupling(sz, seed + 2));
  results.push_back(check_hadamard_two_step(sz, seed + 3));
  results.push_back(check_theorem2_suite(sz, seed + 4));
  results.push_back(check_theorem3_suite(sz, seed + 5));
  results.push_back(check_norm_decomposition(sz, seed + 6));
  results.push_back(check_hn_identity(sz, seed + 7));
  results.push_back(check_parseval(sz, seed + 8));
  results.push_back(check_long_time_limits(sz, seed + 9));
  results.push_back(check_disjointness(sz, seed + 10));
  results.push_back(check_reversibility(sz, seed + 11));
  results.push_back(check_lemma1(sz, seed + 12));
  return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace qwrca
