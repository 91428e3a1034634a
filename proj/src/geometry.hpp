#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace heatctl::geometry {

using Point = std::array<double, 3>;  // unused trailing coordinates are 0

/// Masked uniform lattice representing an open set M (mask) and a control
/// region Omega (omega <= mask).  Cell (i,j,k) has its center at
/// origin + (index + 1/2) h per axis.  Axes that truncate an unbounded
/// direction are recorded so integrals can carry a tail certificate.
struct GridDomain {
  int dim = 1;
  double h = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::vector<std::uint8_t> mask;
  std::vector<std::uint8_t> omega;
  // Optional area fraction of each omega cell (empty = all ones).  Thin
  // control cylinders carry measure well below one cell; a plain boolean
  // mask would either drop that mass or round it up to a full cell, and the
  // averaged distance would then track lattice artifacts instead of the
  // control region's measure.
  std::vector<double> omega_weight;

  // Tail-certificate metadata: bound on the omega cross-section measure per
  // unit length beyond the truncated axis (0 when omega is fully inside).
  int truncated_axis = -1;
  double omega_tail_density = 0.0;

  double weight(std::size_t idx) const {
    return omega_weight.empty() ? 1.0 : omega_weight[idx];
  }

  std::size_t cells() const { return dims[0] * dims[1] * dims[2]; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (k * dims[1] + j) * dims[0] + i;
  }
  std::array<std::size_t, 3> unpack(std::size_t idx) const {
    std::array<std::size_t, 3> c{};
    c[0] = idx % dims[0];
    c[1] = (idx / dims[0]) % dims[1];
    c[2] = idx / (dims[0] * dims[1]);
    return c;
  }
  Point center(std::size_t idx) const {
    auto c = unpack(idx);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = origin[a] + (double(c[a]) + 0.5) * h;
    return p;
  }
  double cell_measure() const;
  double measure() const;        // |M| as mask count * h^dim
  double omega_measure() const;  // |Omega|
  std::size_t mask_count() const;
  std::size_t omega_count() const;

  /// Cell containing p, provided it is inside the lattice and the mask.
  std::optional<std::size_t> locate(const Point& p) const;

  /// Checks omega <= mask, nonempty mask, and single connected component
  /// (face adjacency).  Throws on violation.
  void validate() const;
};

/// Axis-aligned box (0,e1) x ... x (0,en) with a one-cell ghost ring on every
/// axis (the whole boundary is real).  Omega starts empty.
GridDomain make_box_domain(std::span<const double> edges, double h);

/// Marks omega on all mask cells whose center lies in [lo, hi].
void add_omega_box(GridDomain& d, const Point& lo, const Point& hi);

/// Vertex-centered lattices for finite-difference oracles: nodes at integer
/// multiples of h with the Dirichlet boundary nodes left outside the mask.
GridDomain make_interval_node_domain(double length, double h);
GridDomain make_box_node_domain(std::span<const double> edges, double h);

/// Radius profile R(z) for rod scenarios.
struct RadiusProfile {
  enum class Kind { constant, capped_inverse, inverse_log, exp_decay };
  Kind kind = Kind::constant;
  double p0 = 1.0;  // constant: R0 | capped_inverse: cap | inverse_log: shift | exp_decay: amplitude
  double p1 = 0.0;  // capped_inverse: scale | exp_decay: rate

  double operator()(double z) const;
  double sup() const;
  bool nonincreasing_on_positive_axis() const;
};

enum class ScenarioKind {
  strip,                           // ]0,L[ x R, controlled from the side x=0
  rod_with_interior_rod,           // S x R, omega = interior rod w x R
  rod_with_slabs,                  // S x R, omega = everything except slabs
  rod_shrinking_cylinder_control,  // S x R, omega = { x^2+y^2 < R(z)^2 }
  shrinking_rod                    // M = { x^2+y^2 < R(|z|)^2 }, omega = M cap {|z| <= omega_zmax}
};

struct Slab {
  double center = 0.0;
  double half_width = 0.0;
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::strip;
  double h = 0.1;
  double strip_width = 1.0;          // strip: L
  std::string section_shape = "disk";  // rods: "disk" | "square"
  double section_radius = 1.0;         // disk radius or square half-width
  double omega_radius = 0.25;          // rod_with_interior_rod: interior rod radius
  double omega_zmax = 1.0;             // shrinking_rod: omega = {|z| <= omega_zmax}
  double axis_min = -10.0;             // truncation of the unbounded axis
  double axis_max = 10.0;
  std::vector<Slab> slabs;             // rod_with_slabs
  RadiusProfile profile;               // cylinder-control / shrinking rod
  double max_point_z = 0.0;            // largest |z| of any point the caller will query
};

GridDomain build_scenario(const ScenarioSpec& spec);

/// Shortest-path distances from y over the cell-center graph.
/// Stencils: 1-D 2-neighbor (exact), 2-D 16-neighbor (8 + knight moves,
/// worst-case overestimate 2.8%), 3-D 26-neighbor (worst-case overestimate
/// 11.6%, direction (2,1,1)).  Moves are pruned when any lattice point in the
/// bounding box of the step is outside the mask, so steps cannot jump walls.
struct DistanceField {
  Point source{};             // snapped cell center
  std::size_t source_cell = 0;
  std::vector<double> dist;   // per cell; +inf outside mask/unreachable
  double boundary_distance = 0.0;
};

DistanceField geodesic_distance_field(const GridDomain& d, const Point& y);

/// min Euclidean distance from y to any cell center outside the mask, minus
/// an h/2 cell-center correction (selectable off for convergence studies).
double boundary_distance(const GridDomain& d, const Point& y, bool half_cell_correction = true);

enum class DistanceMetric { geodesic, euclidean };

struct AveragedDistance {
  double dbar_sq = 0.0;      // -2T log integral(omega) exp(-d^2 / 2T); +inf when omega empty
  double log_integral = 0.0; // natural log of the omega integral
  double d_min = 0.0;        // d(y, Omega) over omega cells
  bool omega_empty = false;
  double tail_log = 0.0;     // log of the truncation-tail bound (-inf when none)
  bool tail_ok = true;       // tail bound < 1% of the integral
};

AveragedDistance averaged_distance(const GridDomain& d, const Point& y, double T,
                                   DistanceMetric metric = DistanceMetric::geodesic);

/// min{ d_boundary, T pi^2 n / 4 }.
double bounded_distance(double d_boundary, double T, int n);

enum class ConstantVariant { paper, corrected };

struct GncPoint {
  Point y{};
  double dbar_sq = 0.0;
  double d_boundary = 0.0;
  double d_bounded_tbar = 0.0;
  double d_bounded_tdbar = 0.0;
  double value = 0.0;  // dbar^2 - kappa c_n (Tbar / d_bounded_tbar)^2
  double s = 0.0;      // normalized divergence sequence
};

struct GncOptions {
  std::size_t divergence_start = 0;   // verdict looks at indices >= this
  double divergence_threshold = 10.0; // final - start value must exceed this
};

struct GncReport {
  std::vector<GncPoint> points;
  double tbar = 0.0;
  double kappa = 0.0;
  double epsilon = 0.0;      // split kappa = kappa' (1 + epsilon)
  double kappa_prime = 0.0;
  double tdbar = 0.0;        // tbar / (1 + epsilon)
  ConstantVariant variant = ConstantVariant::corrected;
  bool divergent = false;    // numerical evidence only, never a proof
};

GncReport gnc_evaluate(const GridDomain& d, std::span<const Point> points, double tbar,
                       double kappa, ConstantVariant variant = ConstantVariant::corrected,
                       const GncOptions& opts = {});

struct ConvolutionBound {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// pi integral R(z)^2 exp(-(z - z_k)^2 / 2T) dz over [axis_min, axis_max] by
/// composite Simpson; errors out when the Gaussian tail beyond the truncation
/// exceeds 1% of the value.
ConvolutionBound rod_iii_upper(const RadiusProfile& profile, double T, double z_k,
                               double axis_min, double axis_max, std::size_t simpson_cells = 8192);

struct ShrinkRodEntry {
  double z = 0.0;
  double d = 0.0;
  double q = 0.0;  // d^2 - kappa' (pi^2 n^2 / 4)(T / R(z+d))^2
  // Grid verification of the reductions (only when a scenario grid is given):
  bool boundary_ok = true;  // d_boundary(m_k) >= R(z_k + d_k) within an h slack
  bool omega_ok = true;     // d(m_k, Omega) >= d_k within an h slack
  double boundary_margin = 0.0;
  double omega_margin = 0.0;
};

struct ShrinkRodReport {
  std::vector<ShrinkRodEntry> entries;
  bool divergent = false;
  bool reductions_hold = true;
};

ShrinkRodReport shrinkrod_check(const RadiusProfile& profile, std::span<const double> zs,
                                std::span<const double> ds, double kappa_prime, double T, int n,
                                const GridDomain* scenario = nullptr, const GncOptions& opts = {});

/// log(erfc(u)) without underflow for large u.
double log_erfc(double u);

}  // namespace heatctl::geometry
