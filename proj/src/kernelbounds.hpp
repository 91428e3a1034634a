#pragma once

#include <span>

#include "geometry.hpp"
#include "numerics.hpp"

namespace heatctl::kernelbounds {

struct KernelValue {
  double value = 0.0;
  double tail_bound = 0.0;   // bound on the truncated remainder of the series
  bool tail_flagged = false; // tail bound above 1e-6 (small-t request honored but flagged)
};

/// Dirichlet heat kernel on ]0,L[ by its sine eigenfunction series,
/// truncated at nterms per the query.
KernelValue interval_kernel(double length, double t, double x, double y, std::size_t nterms);

/// Smallest series length whose reported tail bound is below tail_target.
std::size_t auto_terms(double length, double t, double tail_target = 1e-10);

/// Product of interval kernels over the axes of a box.
KernelValue box_kernel(std::span<const double> edges, double t, std::span<const double> x,
                       std::span<const double> y, std::size_t nterms);

/// Empirical certificate for the Gaussian upper bound: the sup over the given
/// samples of K(t,x,y) t^{n/2} exp(d(x,y)^2 / (4(1+eps)t)) with d Euclidean
/// (boxes are convex).  Existence is classical; no value is published, hence
/// the fit.
double fit_gaussian_constant(std::span<const double> edges, double epsilon,
                             std::span<const double> ts,
                             std::span<const geometry::Point> xs,
                             std::span<const geometry::Point> ys, std::size_t nterms = 0);

struct WindowBound {
  double lhs = 0.0;      // int_{T1}^{T2} int_Omega K(t,x,y)^2 dx dt
  double rhs = 0.0;      // a_eps^2 (T2-T1)/T1^n exp(-dbar^2 / (2(1+eps)T2))
  double dbar_sq = 0.0;  // averaged distance entering the rhs
  double tail_fraction = 0.0;
};

/// Both sides of the L2 window upper bound on a box domain with control
/// region omega.  lhs by grid sum in x and 33-point composite Simpson in t;
/// errors out when the series tail exceeds 1% of the lhs.
WindowBound l2_window_upper(const geometry::GridDomain& box, const geometry::Point& y, double T1,
                            double T2, double epsilon, double a_eps, std::size_t nterms = 0);

enum class CubeVariant { paper, corrected };

/// Principal-eigenpair lower bound for the cube of half-diagonal d.
/// `paper` evaluates n^{n/2}/(2d)^n exp(-pi^2 n^2 t / (8 d^2)) verbatim;
/// `corrected` evaluates n^{n/2}/d^n exp(-pi^2 n^2 t / (2 d^2)), which is
/// e^{-2 lambda_1 t} |e_1(center)|^2 for the standard first eigenpair of the
/// cube with edge 2d/sqrt(n).  paper(t, d) == corrected(t, 2d) exactly.
double cube_lower_rhs(double t, double half_diagonal, int n, CubeVariant variant);

struct LowerCheck {
  double integral_modal = 0.0;       // sum_j e^{-2 lambda_j t} e_j(y)^2, exact route
  double integral_quadrature = 0.0;  // grid sum of K(t,x,y)^2 over the box
  double principal_bound = 0.0;      // e^{-2 lambda_1 t} e_1(y)^2
};

/// int_box K(t,x,y)^2 dx against its principal-mode lower bound, computed by
/// two routes (modal series and quadrature) that are compared in tests.
LowerCheck l2_lower_check(std::span<const double> edges, std::span<const double> y, double t,
                          std::size_t nterms = 0, std::size_t grid_per_axis = 128);

}  // namespace heatctl::kernelbounds
