#pragma once

#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "numerics.hpp"

namespace heatctl::systems {

/// Finite-dimensional observed heat system in diagonal form: the state decays
/// mode-wise at rates lambda_j >= 0 and is observed through the q x N matrix
/// whose column j is C e_j.
struct SpectralSystem {
  std::vector<double> rates;  // ascending eigenvalues of -A
  numerics::Matrix obs;       // q x N, q == 0 means no observation
  std::string label;

  std::size_t modes() const { return rates.size(); }
  std::size_t outputs() const { return obs.rows(); }
  void validate() const;
};

/// Rates (k pi / L)^2, k = 1..N, of the Dirichlet Laplacian on ]0,L[.
/// Observation left empty.
SpectralSystem dirichlet_interval_spectrum(double length, std::size_t modes);

/// Same spectrum observed through the boundary normal derivative at x = 0:
/// entry_k = d/dx e_k(0) = (k pi / L) sqrt(2/L).
SpectralSystem boundary_observation(double length, std::size_t modes);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Restriction to omega (a union of subintervals of ]0,L[) in an orthonormal
/// quadrature sense: row i is sqrt(w_i) e_j(x_i) over midpoint nodes, so
/// obs'obs approximates the mass matrix of the restriction.
SpectralSystem interior_observation(double length, std::size_t modes,
                                    std::span<const Interval> omega,
                                    std::size_t nodes_per_interval = 64);

/// Second-difference Dirichlet Laplacian on a masked grid, used as an
/// independent oracle for the spectral models.  apply() computes (-Lap_h) v
/// on the compact vector of mask cells.
class GridSystem {
 public:
  GridSystem(const geometry::GridDomain& domain);

  std::size_t size() const { return cells_.size(); }
  double spacing() const { return h_; }
  int dim() const { return dim_; }
  const std::vector<std::size_t>& cells() const { return cells_; }

  void apply(const numerics::Vector& in, numerics::Vector& out) const;

  /// Dense matrix of -Lap_h (positive semidefinite); guarded by a size cap.
  numerics::SymMatrix dense(std::size_t size_limit = 4000) const;

  /// Smallest rate (eigenvalue of -Lap_h) by inverse power iteration with
  /// conjugate-gradient solves.
  double smallest_rate(double rel_tol = 1e-10, std::size_t max_iters = 200) const;

 private:
  int dim_;
  double h_;
  std::vector<std::size_t> cells_;            // lattice index per compact index
  std::vector<long> neighbors_;               // 2*dim entries per cell, -1 = Dirichlet side
};

GridSystem grid_laplacian(const geometry::GridDomain& domain);

}  // namespace heatctl::systems
