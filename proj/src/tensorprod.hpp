#pragma once

#include <span>
#include <vector>

#include "control.hpp"
#include "systems.hpp"

namespace heatctl::tensorprod {

/// Tensor product of an observed factor system with an uncontrolled fiber
/// generator B = diag(b_m), b_m <= 0.  The assembled Kronecker-sum system has
/// rates lambda_j - b_m and observation C (x) I: column (j, m) carries C e_j
/// in the rows of fiber m.
struct ProductSystem {
  systems::SpectralSystem factor;
  std::vector<double> bvals;
  systems::SpectralSystem assembled;   // rates sorted ascending
  std::vector<std::size_t> index_map;  // (m * N + j) -> assembled column
};

ProductSystem kronecker_sum(const systems::SpectralSystem& factor, std::span<const double> bvals,
                            std::size_t size_limit = 2000);

/// Cost of the assembled product system through the full Kronecker Gramian,
/// deliberately not using the fiber structure so fiber_costs stays an
/// independent cross-check.
control::CostReport product_cost(const ProductSystem& p, double T,
                                 const control::CostOptions& opts = {},
                                 std::size_t size_limit = 2000);

/// Costs of the factor shifted by each b_m (the fiberwise decomposition from
/// the product lemma's proof).
std::vector<control::CostReport> fiber_costs(const systems::SpectralSystem& factor,
                                             std::span<const double> bvals, double T,
                                             const control::CostOptions& opts = {});

struct LemmaCheck {
  double kappa_product = 0.0;
  double kappa_factor = 0.0;
  double kappa_fiber_max = 0.0;
  double admissibility_product = 0.0;
  double admissibility_factor = 0.0;
  std::size_t worst_fiber = 0;
  bool pass_inequality = false;  // kappa_product <= kappa_factor (1 + tol)
  bool pass_decoupling = false;  // kappa_product == max fiber kappa within tol
  bool pass = false;
  double tolerance = 0.0;
};

/// Verifies, on one instance, that the product costs no more than the factor
/// and decouples exactly into fibers.
LemmaCheck check_lemma(const systems::SpectralSystem& factor, std::span<const double> bvals,
                       double T, double tolerance = 1e-8,
                       const control::CostOptions& opts = {});

/// Eigenvalues of a dense symmetric fiber generator, ascending; rejects
/// matrices with eigenvalues above the PSD tolerance (the lemma hypothesis).
/// Cost on the fiber is basis invariant, so a diagonal B loses nothing.
std::vector<double> non_positive_eigenvalues(const numerics::SymMatrix& b, double tol = 1e-12);

/// Observability quotient of the assembled product system for separable data
/// fx (x) fy, evaluated through the fiberwise identity
///   (fx(x)fy)' G (fx(x)fy) = sum_m fy_m^2 int_0^T e^{2 b_m t} ||C e^{tA} fx||^2 dt.
/// Matches control::observability_quotient on the assembled system, but does
/// not materialize the N*m Gramian.
double product_observability_quotient(const systems::SpectralSystem& factor,
                                      std::span<const double> bvals, double T,
                                      const numerics::Vector& fx, const numerics::Vector& fy);

}  // namespace heatctl::tensorprod
