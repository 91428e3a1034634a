#include "control.hpp"

#include <cmath>

#include "jacobi.hpp"

namespace heatctl::control {

namespace {

template <class Real>
Real phi_weight(Real s, Real T) {
  using ST = numerics::ScalarTraits<Real>;
  if (s == Real(0)) return T;
  const Real st = s * T;
  if (st < Real(1e-8)) return T * (Real(1) - st / Real(2) + st * st / Real(6));
  return -ST::expm1(-st) / s;
}

// Column supports of the observation matrix; obs columns produced by tensor
// assembly live in one fiber block each, which makes obs'obs block sparse.
struct ColSupport {
  std::vector<std::size_t> lo, hi;
};

ColSupport column_supports(const numerics::Matrix& obs) {
  const std::size_t q = obs.rows(), n = obs.cols();
  ColSupport s;
  s.lo.assign(n, q);
  s.hi.assign(n, 0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (obs(i, j) != 0.0) {
        s.lo[j] = std::min(s.lo[j], i);
        s.hi[j] = std::max(s.hi[j], i + 1);
      }
  return s;
}

// obs'obs scaled by phi(lambda_j + lambda_k, T), assembled in Real.
template <class Real>
std::vector<Real> gramian_dense(const systems::SpectralSystem& sys, double T) {
  const std::size_t n = sys.modes();
  std::vector<Real> g(n * n, Real(0));
  if (sys.outputs() == 0) return g;
  const ColSupport sup = column_supports(sys.obs);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const std::size_t a = std::max(sup.lo[j], sup.lo[k]);
      const std::size_t b = std::min(sup.hi[j], sup.hi[k]);
      if (a >= b) continue;
      Real dotv = Real(0);
      for (std::size_t i = a; i < b; ++i)
        dotv += Real(sys.obs(i, j)) * Real(sys.obs(i, k));
      const Real w = phi_weight(Real(sys.rates[j]) + Real(sys.rates[k]), Real(T));
      g[j * n + k] = g[k * n + j] = dotv * w;
    }
  }
  return g;
}

template <class Real>
numerics::GenEigOutcome<Real> cost_pencil(const systems::SpectralSystem& sys, double T,
                                          Real null_tol, bool want_maximizer) {
  using ST = numerics::ScalarTraits<Real>;
  const std::size_t n = sys.modes();
  std::vector<Real> g = gramian_dense<Real>(sys, T);
  std::vector<Real> e(n * n, Real(0));
  for (std::size_t j = 0; j < n; ++j)
    e[j * n + j] = ST::exp(Real(-2.0) * Real(sys.rates[j]) * Real(T));
  numerics::GenEigOptions<Real> opts;
  opts.null_space_tol = null_tol;
  if constexpr (!std::is_same_v<Real, double>) opts.eig.rel_tol = Real(1e-30);
  return numerics::gen_eig_max_impl<Real>(n, e, std::move(g), want_maximizer, opts);
}

}  // namespace

double phi_decay_weight(double s, double T) {
  if (s < 0.0 || T <= 0.0)
    throw Error(ErrorCode::invalid_argument, "phi: needs s >= 0 and T > 0");
  return phi_weight<double>(s, T);
}

numerics::SymMatrix observability_gramian(const systems::SpectralSystem& sys, double T) {
  sys.validate();
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "gramian: T must be positive");
  const std::size_t n = sys.modes();
  std::vector<double> g = gramian_dense<double>(sys, T);
  return numerics::SymMatrix::from_dense(n, g);
}

double admissibility_constant(const systems::SpectralSystem& sys, double T) {
  const numerics::SymMatrix g = observability_gramian(sys, T);
  if (sys.outputs() == 0) return 0.0;
  const numerics::EigDecomposition d = numerics::sym_eig(g);
  return std::max(d.eigenvalues.back(), 0.0);
}

CostReport control_cost(const systems::SpectralSystem& sys, double T, const CostOptions& opts) {
  sys.validate();
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "cost: T must be positive");

  CostReport rep;
  rep.horizon = T;
  rep.modes = sys.modes();

  if (opts.quad_precision) {
    using numerics::quad;
    const auto out = cost_pencil<quad>(sys, T, quad(opts.quad_null_space_tol), false);
    rep.infinite = out.infinite;
    rep.min_gramian_eigenvalue = double(out.min_g_eigenvalue);
    rep.admissibility = std::max(double(out.max_g_eigenvalue), 0.0);
    if (out.infinite) {
      rep.kappa = rep.kappa_sq = std::numeric_limits<double>::infinity();
      rep.log_kappa_sq = std::numeric_limits<double>::infinity();
      rep.unobservable_direction.assign(out.null_direction.size(), 0.0);
      for (std::size_t i = 0; i < out.null_direction.size(); ++i)
        rep.unobservable_direction[i] = double(out.null_direction[i]);
    } else {
      rep.kappa_sq = double(out.value);
      rep.log_kappa_sq =
          out.value > quad(0) ? double(logq(out.value)) : -std::numeric_limits<double>::infinity();
      rep.kappa = std::exp(0.5 * rep.log_kappa_sq);
    }
    return rep;
  }

  const auto out = cost_pencil<double>(sys, T, opts.null_space_tol, false);
  rep.infinite = out.infinite;
  rep.min_gramian_eigenvalue = out.min_g_eigenvalue;
  rep.admissibility = std::max(out.max_g_eigenvalue, 0.0);
  if (out.infinite) {
    rep.kappa = rep.kappa_sq = std::numeric_limits<double>::infinity();
    rep.log_kappa_sq = std::numeric_limits<double>::infinity();
    rep.unobservable_direction = out.null_direction;
  } else {
    rep.kappa_sq = out.value;
    rep.kappa = std::sqrt(out.value);
    rep.log_kappa_sq =
        out.value > 0.0 ? std::log(out.value) : -std::numeric_limits<double>::infinity();
  }
  return rep;
}

ControlTrajectory min_norm_control(const systems::SpectralSystem& sys, double T,
                                   const numerics::Vector& zeta0, std::size_t samples) {
  sys.validate();
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "control: T must be positive");
  if (zeta0.size() != sys.modes())
    throw Error(ErrorCode::invalid_argument, "control: initial state size mismatch");
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "control: need at least 2 samples");

  const std::size_t n = sys.modes();
  const std::size_t q = sys.outputs();
  const numerics::SymMatrix g = observability_gramian(sys, T);

  numerics::Vector b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = std::exp(-sys.rates[j] * T) * zeta0[j];

  numerics::Vector eta;
  try {
    eta = numerics::solve_spd(g, b);
  } catch (const SingularSystemError& e) {
    throw SingularSystemError(e.smallest_eigenvalue(),
                              "control: Gramian singular, system not null-controllable "
                              "on the requested modes");
  }

  ControlTrajectory traj;
  traj.adjoint_seed = eta;
  traj.times.resize(samples);
  traj.values = numerics::Matrix(samples, q);

  const double dt = T / double(samples - 1);
  numerics::Vector decayed(n);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = double(i) * dt;
    traj.times[i] = t;
    for (std::size_t j = 0; j < n; ++j) decayed[j] = std::exp(-sys.rates[j] * (T - t)) * eta[j];
    for (std::size_t r = 0; r < q; ++r) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += sys.obs(r, j) * decayed[j];
      traj.values(i, r) = -acc;
    }
    double usq = 0.0;
    for (std::size_t r = 0; r < q; ++r) usq += traj.values(i, r) * traj.values(i, r);
    traj.energy_sq_trapezoid += usq * dt * ((i == 0 || i + 1 == samples) ? 0.5 : 1.0);
  }

  const numerics::Vector geta = g.multiply(eta);
  traj.energy_sq_modal = numerics::dot(eta, geta);
  double res = 0.0;
  for (std::size_t j = 0; j < n; ++j) res += (b[j] - geta[j]) * (b[j] - geta[j]);
  traj.terminal_residual = std::sqrt(res);
  return traj;
}

double observability_quotient(const systems::SpectralSystem& sys, double T,
                              const numerics::Vector& f0) {
  sys.validate();
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "quotient: T must be positive");
  if (f0.size() != sys.modes())
    throw Error(ErrorCode::invalid_argument, "quotient: state size mismatch");
  if (numerics::norm(f0) == 0.0)
    throw Error(ErrorCode::invalid_argument, "quotient: f0 must be nonzero");

  double num = 0.0;
  for (std::size_t j = 0; j < sys.modes(); ++j) {
    const double d = std::exp(-sys.rates[j] * T) * f0[j];
    num += d * d;
  }
  const numerics::SymMatrix g = observability_gramian(sys, T);
  const double den = numerics::dot(f0, g.multiply(f0));
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

std::vector<AlphaProbeRow> alpha_star_probe(double length, std::span<const double> horizons,
                                            double rate_cutoff_coeff) {
  if (length <= 0.0) throw Error(ErrorCode::invalid_argument, "probe: length must be positive");
  if (horizons.empty()) throw Error(ErrorCode::invalid_argument, "probe: empty horizon list");
  if (rate_cutoff_coeff <= 0.0)
    throw Error(ErrorCode::invalid_argument, "probe: cutoff coefficient must be positive");
  const double pi = 3.14159265358979323846;
  const double tmax = std::min(pi, length) * std::min(pi, length);
  for (double T : horizons)
    if (T <= 0.0 || T > tmax)
      throw Error(ErrorCode::invalid_argument,
                  "probe: horizons must lie in ]0, min(pi, L)^2]");

  std::vector<AlphaProbeRow> rows;
  CostOptions opts;
  opts.quad_precision = true;
  for (double T : horizons) {
    AlphaProbeRow row;
    row.horizon = T;
    // Smallest N with lambda_N = (N pi / L)^2 >= coeff / T.
    row.modes = std::max<std::size_t>(
        1, std::size_t(std::ceil(length / pi * std::sqrt(rate_cutoff_coeff / T))));
    const systems::SpectralSystem sys = systems::boundary_observation(length, row.modes);
    const CostReport rep = control_cost(sys, T, opts);
    row.normalized_log_cost = T * 0.5 * rep.log_kappa_sq / (length * length);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace heatctl::control
