#pragma once

#include <span>
#include <vector>

#include "numerics.hpp"
#include "systems.hpp"

namespace heatctl::control {

/// phi(s,T) = (1 - e^{-sT})/s for s > 0, phi(0,T) = T, evaluated through a
/// series branch for sT < 1e-8 to avoid cancellation.
double phi_decay_weight(double s, double T);

/// Observability Gramian G_jk = (C e_j . C e_k) phi(lambda_j + lambda_k, T):
/// the quadratic form of the output energy over [0, T].
numerics::SymMatrix observability_gramian(const systems::SpectralSystem& sys, double T);

/// K_T: largest eigenvalue of the observability Gramian.
double admissibility_constant(const systems::SpectralSystem& sys, double T);

struct CostOptions {
  // The quad path evaluates the whole pencil in __float128.  Fast-control
  // Gramians have condition numbers growing like exp(c/T), so double runs
  // out of exponent budget for small horizons; quad extends the range.
  bool quad_precision = false;
  double null_space_tol = 1e-12;
  double quad_null_space_tol = 1e-30;
};

struct CostReport {
  double horizon = 0.0;
  double kappa = 0.0;     // +inf when some decaying direction is unobserved
  double kappa_sq = 0.0;
  double log_kappa_sq = 0.0;  // natural log; finite even when kappa_sq overflows double
  double admissibility = 0.0;
  std::size_t modes = 0;
  double min_gramian_eigenvalue = 0.0;
  bool infinite = false;
  numerics::Vector unobservable_direction;  // witness when infinite
};

/// kappa_T^2 = sup_z ||z(T)||^2 / int_0^T ||C z(t)||^2 dt, through the pencil
/// (E, G) with E = diag(e^{-2 lambda T}).
CostReport control_cost(const systems::SpectralSystem& sys, double T, const CostOptions& = {});

struct ControlTrajectory {
  numerics::Vector times;
  numerics::Matrix values;          // samples x q, u(t_i)
  double energy_sq_trapezoid = 0.0; // trapezoidal L2 norm of the samples
  double energy_sq_modal = 0.0;     // exact eta' G eta
  double terminal_residual = 0.0;   // ||zeta(T)||, computed modally
  numerics::Vector adjoint_seed;    // eta solving G eta = e^{TA} zeta0
};

/// HUM minimal-norm control u(t) = -C e^{(T-t)A} eta steering zeta0 to zero.
ControlTrajectory min_norm_control(const systems::SpectralSystem& sys, double T,
                                   const numerics::Vector& zeta0, std::size_t samples);

/// ||e^{TA} f0||^2 / (f0' G f0); +inf when the denominator vanishes.
double observability_quotient(const systems::SpectralSystem& sys, double T,
                              const numerics::Vector& f0);

struct AlphaProbeRow {
  double horizon = 0.0;
  std::size_t modes = 0;
  double normalized_log_cost = 0.0;  // T ln kappa_T / L^2
};

/// Normalized fast-control log-costs for the boundary-controlled interval.
/// N is coupled to T through the rate cutoff lambda_N >= coeff / T; for a
/// fixed mode count the exponential small-time blow-up is invisible, which is
/// why the coupling is not optional.  This probe makes no claim to compute
/// the optimal rate itself.
std::vector<AlphaProbeRow> alpha_star_probe(double length, std::span<const double> horizons,
                                            double rate_cutoff_coeff = 100.0);

}  // namespace heatctl::control
