#include <doctest.h>

#include <cmath>
#include <random>

#include "control.hpp"

using namespace heatctl;
using numerics::SymMatrix;
using numerics::Vector;
using systems::SpectralSystem;

namespace {
constexpr double kPi = 3.14159265358979323846;

SpectralSystem single_mode(double rate, double c) {
  SpectralSystem s;
  s.rates = {rate};
  s.obs = numerics::Matrix(1, 1);
  s.obs(0, 0) = c;
  s.label = "single";
  return s;
}

// Closed-form single-mode cost: kappa^2 = 2 lambda e^{-2 lambda T} / (1 - e^{-2 lambda T}).
double single_mode_cost_sq(double rate, double T) {
  if (rate == 0.0) return 1.0 / T;
  return std::exp(-2.0 * rate * T) / (-std::expm1(-2.0 * rate * T) / (2.0 * rate));
}

SpectralSystem random_system(std::mt19937_64& rng, std::size_t n, std::size_t q) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  SpectralSystem s;
  s.rates.resize(n);
  double acc = unif(rng);
  for (std::size_t j = 0; j < n; ++j) {
    s.rates[j] = acc;
    acc += 0.5 + 2.0 * unif(rng);  // spaced rates keep the Gramian well conditioned
  }
  s.obs = numerics::Matrix(q, n);
  for (double& v : s.obs.data()) v = gauss(rng);
  // Keep every mode visibly observed.
  for (std::size_t j = 0; j < n; ++j) {
    double colsq = 0.0;
    for (std::size_t r = 0; r < q; ++r) colsq += s.obs(r, j) * s.obs(r, j);
    if (colsq < 0.01) s.obs(0, j) += 0.5;
  }
  s.label = "random";
  return s;
}

}  // namespace

TEST_SUITE("control") {

TEST_CASE("phi weight closed forms and small-argument branch") {
  CHECK(control::phi_decay_weight(0.0, 2.0) == doctest::Approx(2.0));
  CHECK(control::phi_decay_weight(2.0, 1.0) ==
        doctest::Approx(-std::expm1(-2.0) / 2.0).epsilon(1e-15));
  // Tiny s T: series value T (1 - sT/2) to machine accuracy.
  const double s = 1e-12, T = 1.0;
  CHECK(control::phi_decay_weight(s, T) ==
        doctest::Approx(T * (1.0 - s * T / 2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(control::phi_decay_weight(-1.0, 1.0), Error);
}

TEST_CASE("gramian single mode closed forms") {
  const auto g0 = control::observability_gramian(single_mode(0.0, 1.0), 2.0);
  CHECK(g0(0, 0) == doctest::Approx(2.0).epsilon(1e-15));

  const auto g1 = control::observability_gramian(single_mode(1.0, 1.0), 1.0);
  CHECK(g1(0, 0) == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-15));
}

TEST_CASE("gramian vanishes without observation") {
  SpectralSystem s;
  s.rates = {1.0, 2.0};
  s.obs = numerics::Matrix(1, 2);  // zero rows
  const auto g = control::observability_gramian(s, 1.0);
  CHECK(g.max_abs() == 0.0);
}

TEST_CASE("gramian is monotone in the horizon") {
  std::mt19937_64 rng(5);
  const auto sys = random_system(rng, 6, 2);
  const auto g1 = control::observability_gramian(sys, 0.7);
  const auto g2 = control::observability_gramian(sys, 1.3);
  SymMatrix diff(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i; j < 6; ++j) diff.set(i, j, g2(i, j) - g1(i, j));
  const auto d = numerics::sym_eig(diff);
  CHECK(d.eigenvalues.front() >= -1e-12 * std::max(g2.max_abs(), 1.0));
}

TEST_CASE("admissibility constant examples") {
  CHECK(control::admissibility_constant(single_mode(0.0, 1.0), 2.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(control::admissibility_constant(single_mode(1.0, 1.0), 1.0) ==
        doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-14));
  SpectralSystem zero;
  zero.rates = {1.0};
  zero.obs = numerics::Matrix(1, 1);
  CHECK(control::admissibility_constant(zero, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("admissibility bounded by T times the output Frobenius norm squared") {
  // For nonnegative rates the semigroup is a contraction, so
  // K_T <= T ||C||_op^2 <= T ||C||_F^2.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = random_system(rng, 5, 3);
    double frob_sq = 0.0;
    for (double v : sys.obs.data()) frob_sq += v * v;
    const double T = 0.25 + 0.5 * double(trial);
    CHECK(control::admissibility_constant(sys, T) <= T * frob_sq * (1.0 + 1e-12));
  }
}

TEST_CASE("control cost of the constant system is 1/T") {
  const auto rep = control::control_cost(single_mode(0.0, 1.0), 1.0);
  CHECK(rep.kappa_sq == doctest::Approx(1.0).epsilon(1e-12));
  const auto rep2 = control::control_cost(single_mode(0.0, 1.0), 4.0);
  CHECK(rep2.kappa_sq == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("control cost single decaying mode closed form") {
  const auto rep = control::control_cost(single_mode(1.0, 1.0), 1.0);
  CHECK(rep.kappa_sq == doctest::Approx(single_mode_cost_sq(1.0, 1.0)).epsilon(1e-13));
  CHECK(rep.kappa_sq == doctest::Approx(0.313035).epsilon(1e-5));
  CHECK(rep.admissibility == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-13));
}

TEST_CASE("control cost is infinite without observation") {
  SpectralSystem s;
  s.rates = {1.0, 2.0};
  s.obs = numerics::Matrix(1, 2);
  const auto rep = control::control_cost(s, 1.0);
  CHECK(rep.infinite);
  CHECK(std::isinf(rep.kappa));
  CHECK(rep.unobservable_direction.size() == 2);
}

TEST_CASE("control cost nonincreasing in T and nondecreasing in N") {
  control::CostOptions quad;
  quad.quad_precision = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double T : {0.05, 0.1, 0.2, 0.5, 1.0}) {
    const auto rep = control::control_cost(systems::boundary_observation(1.0, 6), T, quad);
    CHECK(rep.log_kappa_sq <= prev + 1e-10);
    prev = rep.log_kappa_sq;
  }
  prev = -std::numeric_limits<double>::infinity();
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const auto rep = control::control_cost(systems::boundary_observation(1.0, n), 0.3, quad);
    CHECK(rep.log_kappa_sq >= prev - 1e-10);
    prev = rep.log_kappa_sq;
  }
}

TEST_CASE("min norm control: zero initial state gives the zero control") {
  const auto traj = control::min_norm_control(single_mode(1.0, 1.0), 1.0, {0.0}, 9);
  CHECK(traj.terminal_residual == doctest::Approx(0.0));
  CHECK(traj.energy_sq_modal == doctest::Approx(0.0));
  for (double v : traj.values.data()) CHECK(v == 0.0);
}

TEST_CASE("min norm control single-mode closed form") {
  const double g = (1.0 - std::exp(-2.0)) / 2.0;
  const double eta = std::exp(-1.0) / g;  // = 0.850918...
  const auto traj = control::min_norm_control(single_mode(1.0, 1.0), 1.0, {1.0}, 33);
  CHECK(traj.adjoint_seed[0] == doctest::Approx(eta).epsilon(1e-12));
  CHECK(eta == doctest::Approx(0.850918).epsilon(1e-6));
  CHECK(traj.energy_sq_modal == doctest::Approx(eta * eta * g).epsilon(1e-12));
  // Extremal case: a single mode attains the cost exactly.
  CHECK(traj.energy_sq_modal == doctest::Approx(single_mode_cost_sq(1.0, 1.0)).epsilon(1e-12));
  // u(T) = -eta.
  CHECK(traj.values(32, 0) == doctest::Approx(-eta).epsilon(1e-12));
}

TEST_CASE("min norm control residual and energy contracts on random systems") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 25; ++trial) {
    // Resample until the Gramian is comfortably positive definite: the
    // operation's precondition, enforced here by the instance family.
    std::size_t n = 1 + std::size_t(rng() % 8);
    auto sys = random_system(rng, n, 1 + std::size_t(rng() % 3));
    double T = 0.4 + 1.2 * double(rng() % 1000) / 1000.0;
    while (true) {
      const auto probe = control::control_cost(sys, T);
      if (!probe.infinite && probe.min_gramian_eigenvalue > 1e-9 * probe.admissibility) break;
      n = 1 + std::size_t(rng() % 6);
      sys = random_system(rng, n, 1 + std::size_t(rng() % 3));
      T = 0.4 + 1.2 * double(rng() % 1000) / 1000.0;
    }
    Vector zeta0(n);
    for (double& v : zeta0) v = gauss(rng);
    const auto traj = control::min_norm_control(sys, T, zeta0, 17);
    const auto rep = control::control_cost(sys, T);
    const double norm0 = numerics::norm(zeta0);
    CHECK(traj.terminal_residual <= 1e-8 * norm0);
    CHECK(traj.energy_sq_modal <= (1.0 + 1e-6) * rep.kappa_sq * norm0 * norm0);
  }
}

TEST_CASE("min norm control attains the cost on the top generalized eigenvector") {
  std::mt19937_64 rng(29);
  const auto sys = random_system(rng, 6, 2);
  const double T = 0.8;
  const auto g = control::observability_gramian(sys, T);
  SymMatrix e(6);
  for (std::size_t j = 0; j < 6; ++j) e.set(j, j, std::exp(-2.0 * sys.rates[j] * T));
  const auto pencil = numerics::gen_eig_max_report(e, g, 1e-12, true);
  REQUIRE(!pencil.infinite);
  // The control-side extremal datum is e^{TA} z*, the image of the
  // observation-side pencil maximizer z* under the semigroup.
  Vector zeta0(6);
  for (std::size_t j = 0; j < 6; ++j)
    zeta0[j] = std::exp(-sys.rates[j] * T) * pencil.maximizer[j];
  const auto traj = control::min_norm_control(sys, T, zeta0, 17);
  CHECK(traj.energy_sq_modal ==
        doctest::Approx(pencil.value * numerics::dot(zeta0, zeta0)).epsilon(1e-6));
}

TEST_CASE("min norm control trapezoid energy approaches the modal energy") {
  std::mt19937_64 rng(31);
  const auto sys = random_system(rng, 4, 2);
  Vector zeta0{1.0, -0.5, 0.25, 0.7};
  const auto coarse = control::min_norm_control(sys, 1.0, zeta0, 65);
  const auto fine = control::min_norm_control(sys, 1.0, zeta0, 4097);
  const double err_c = std::fabs(coarse.energy_sq_trapezoid - coarse.energy_sq_modal);
  const double err_f = std::fabs(fine.energy_sq_trapezoid - fine.energy_sq_modal);
  CHECK(err_f < err_c);
  CHECK(fine.energy_sq_trapezoid == doctest::Approx(fine.energy_sq_modal).epsilon(1e-5));
}

TEST_CASE("min norm control reports the not-null-controllable case") {
  SpectralSystem s;
  s.rates = {1.0, 2.0};
  s.obs = numerics::Matrix(1, 2);
  s.obs(0, 0) = 1.0;  // second mode unobserved -> singular Gramian
  CHECK_THROWS_AS(control::min_norm_control(s, 1.0, {1.0, 1.0}, 9), SingularSystemError);
}

TEST_CASE("observability quotient reduces to the single-mode cost") {
  const auto sys = single_mode(1.0, 1.0);
  const double q = control::observability_quotient(sys, 1.0, {1.0});
  CHECK(q == doctest::Approx(single_mode_cost_sq(1.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("observability quotient never exceeds the cost and approaches it") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss;
  const systems::Interval full[] = {{0.0, 1.0}};
  const auto sys = systems::interior_observation(1.0, 10, full, 128);
  const double T = 0.1;
  const auto rep = control::control_cost(sys, T);
  double sup = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    Vector f0(10);
    for (double& v : f0) v = gauss(rng);
    const double q = control::observability_quotient(sys, T, f0);
    CHECK(q <= rep.kappa_sq * (1.0 + 1e-9));
    sup = std::max(sup, q);
  }
  CHECK(sup >= 0.5 * rep.kappa_sq);  // Monte-Carlo sup within factor 2 (seeded)
}

TEST_CASE("observability quotient rejects the zero state") {
  CHECK_THROWS_AS(control::observability_quotient(single_mode(1.0, 1.0), 1.0, {0.0}), Error);
}

TEST_CASE("fixed mode count: T ln kappa vanishes as T goes to 0") {
  // With N frozen the cost only grows polynomially in 1/T, so the
  // normalized log-cost must decay; the exponential blow-up needs the
  // N(T) coupling of the probe.
  const auto sys = systems::boundary_observation(1.0, 3);
  control::CostOptions quad;
  quad.quad_precision = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double T : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto rep = control::control_cost(sys, T, quad);
    const double val = T * 0.5 * rep.log_kappa_sq;
    CHECK(val < prev);
    prev = val;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("alpha star probe validates its inputs") {
  const double ok[] = {0.05};
  CHECK_THROWS_AS(control::alpha_star_probe(1.0, {}, 100.0), Error);
  const double bad[] = {1.5};  // beyond min(pi, L)^2 = 1
  CHECK_THROWS_AS(control::alpha_star_probe(1.0, bad, 100.0), Error);
  CHECK_THROWS_AS(control::alpha_star_probe(1.0, ok, 0.0), Error);
  CHECK_NOTHROW(control::alpha_star_probe(1.0, ok, 100.0));
}

TEST_CASE("alpha star probe couples the mode count to the horizon") {
  const double ts[] = {0.05, 0.02, 0.01};
  const auto rows = control::alpha_star_probe(1.0, ts, 100.0);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    // smallest N with (N pi / L)^2 >= coeff / T
    const std::size_t expect = std::size_t(std::ceil(1.0 / kPi * std::sqrt(100.0 / ts[i])));
    CHECK(rows[i].modes == expect);
    CHECK(rows[i].normalized_log_cost > 0.0);
  }
}

}  // TEST_SUITE
