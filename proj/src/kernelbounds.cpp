#include "kernelbounds.hpp"

#include <algorithm>
#include <cmath>

namespace heatctl::kernelbounds {

namespace {
constexpr double kPi = 3.14159265358979323846;

double tail_bound_terms(double length, double t, std::size_t nterms) {
  // For k > n:  e^{-t k^2 a} <= e^{-t (n+1)^2 a} rho^{k-n-1},
  // rho = e^{-2t(n+1)a}, a = (pi/L)^2; |e_k(x) e_k(y)| <= 2/L.
  const double a = kPi * kPi / (length * length);
  const double head = std::exp(-t * double(nterms + 1) * double(nterms + 1) * a);
  const double rho = std::exp(-2.0 * t * double(nterms + 1) * a);
  return (2.0 / length) * head / (1.0 - rho);
}

void check_query(double length, double t, double x, double y) {
  if (length <= 0.0) throw Error(ErrorCode::invalid_argument, "kernel: length must be positive");
  if (t <= 0.0) throw Error(ErrorCode::invalid_argument, "kernel: t must be positive");
  if (x < 0.0 || x > length || y < 0.0 || y > length)
    throw Error(ErrorCode::invalid_argument, "kernel: points must lie in the closed box");
}

}  // namespace

KernelValue interval_kernel(double length, double t, double x, double y, std::size_t nterms) {
  check_query(length, t, x, y);
  if (nterms == 0) throw Error(ErrorCode::invalid_argument, "kernel: need at least one term");
  KernelValue out;
  const double a = kPi / length;
  for (std::size_t k = 1; k <= nterms; ++k) {
    const double w = double(k) * a;
    out.value += std::exp(-t * w * w) * (2.0 / length) * std::sin(w * x) * std::sin(w * y);
  }
  out.tail_bound = tail_bound_terms(length, t, nterms);
  out.tail_flagged = out.tail_bound > 1e-6;
  return out;
}

std::size_t auto_terms(double length, double t, double tail_target) {
  if (length <= 0.0 || t <= 0.0 || tail_target <= 0.0)
    throw Error(ErrorCode::invalid_argument, "kernel: bad auto-terms query");
  const double a = kPi * kPi / (length * length);
  const double lead = std::log(2.0 / length) - std::log(tail_target);
  std::size_t n = 1;
  if (lead > 0.0) n = std::max<std::size_t>(1, std::size_t(std::sqrt(lead / (t * a))));
  while (n < 2'000'000 && tail_bound_terms(length, t, n) > tail_target) ++n;
  return n;
}

KernelValue box_kernel(std::span<const double> edges, double t, std::span<const double> x,
                       std::span<const double> y, std::size_t nterms) {
  if (edges.empty() || edges.size() > 3)
    throw Error(ErrorCode::invalid_argument, "kernel: dimension must be 1..3");
  if (x.size() != edges.size() || y.size() != edges.size())
    throw Error(ErrorCode::invalid_argument, "kernel: point dimension mismatch");

  KernelValue out;
  out.value = 1.0;
  double err = 0.0;  // running product-error bound
  double prod_abs = 1.0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    const KernelValue k = interval_kernel(edges[a], t, x[a], y[a], nterms);
    err = err * (std::fabs(k.value) + k.tail_bound) + prod_abs * k.tail_bound;
    prod_abs *= std::fabs(k.value) + k.tail_bound;
    out.value *= k.value;
  }
  out.tail_bound = err;
  out.tail_flagged = out.tail_bound > 1e-6;
  return out;
}

double fit_gaussian_constant(std::span<const double> edges, double epsilon,
                             std::span<const double> ts,
                             std::span<const geometry::Point> xs,
                             std::span<const geometry::Point> ys, std::size_t nterms) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "fit: epsilon must lie in ]0,1[");
  if (ts.empty() || xs.empty() || ys.empty())
    throw Error(ErrorCode::invalid_argument, "fit: empty sample set");
  const double n = double(edges.size());

  double sup = 0.0;
  for (double t : ts) {
    const std::size_t terms = nterms ? nterms : auto_terms(*std::max_element(edges.begin(), edges.end()), t);
    for (const geometry::Point& x : xs) {
      for (const geometry::Point& y : ys) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < edges.size(); ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
        const KernelValue k = box_kernel(edges, t, std::span(x.data(), edges.size()),
                                         std::span(y.data(), edges.size()), terms);
        const double cand =
            k.value * std::pow(t, n / 2.0) * std::exp(d2 / (4.0 * (1.0 + epsilon) * t));
        sup = std::max(sup, cand);
      }
    }
  }
  return sup;
}

WindowBound l2_window_upper(const geometry::GridDomain& box, const geometry::Point& y, double T1,
                            double T2, double epsilon, double a_eps, std::size_t nterms) {
  if (!(0.0 < T1 && T1 < T2))
    throw Error(ErrorCode::invalid_argument, "window: need 0 < T1 < T2");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw Error(ErrorCode::invalid_argument, "window: epsilon must lie in ]0,1[");

  // Recover the box: make_box_domain surrounds the interior with one ghost cell.
  std::array<double, 3> edges{};
  for (int a = 0; a < box.dim; ++a) {
    if (box.dims[a] < 3) throw Error(ErrorCode::invalid_argument, "window: not a box domain");
    edges[a] = double(box.dims[a] - 2) * box.h;
  }
  const int n = box.dim;
  for (int a = 0; a < n; ++a)
    if (y[a] <= 0.0 || y[a] >= edges[a])
      throw Error(ErrorCode::invalid_argument, "window: y must be interior");

  WindowBound out;
  const double cellw = box.cell_measure();

  // 33-point composite Simpson in t.
  const std::size_t segments = 32;
  const double dt = (T2 - T1) / double(segments);
  double lhs = 0.0, tail = 0.0;
  for (std::size_t i = 0; i <= segments; ++i) {
    const double t = T1 + double(i) * dt;
    const double wt = dt / 3.0 * (i == 0 || i == segments ? 1.0 : (i % 2 ? 4.0 : 2.0));
    const std::size_t terms = nterms ? nterms : auto_terms(*std::max_element(edges.begin(), edges.begin() + n), t);

    // Per-axis kernel values along the lattice lines through y.
    std::array<std::vector<double>, 3> kv, ktail;
    for (int a = 0; a < n; ++a) {
      kv[a].resize(box.dims[a]);
      ktail[a].resize(box.dims[a]);
      for (std::size_t c = 0; c < box.dims[a]; ++c) {
        const double xa = box.origin[a] + (double(c) + 0.5) * box.h;
        if (xa <= 0.0 || xa >= edges[a]) continue;  // ghost cells never belong to omega
        const KernelValue k = interval_kernel(edges[a], t, xa, y[a], terms);
        kv[a][c] = k.value;
        ktail[a][c] = k.tail_bound;
      }
    }

    double slice = 0.0, slice_tail = 0.0;
    for (std::size_t idx = 0; idx < box.cells(); ++idx) {
      if (!box.omega[idx]) continue;
      const auto c = box.unpack(idx);
      double v = 1.0, verr = 0.0, vabs = 1.0;
      for (int a = 0; a < n; ++a) {
        verr = verr * (std::fabs(kv[a][c[a]]) + ktail[a][c[a]]) + vabs * ktail[a][c[a]];
        vabs *= std::fabs(kv[a][c[a]]) + ktail[a][c[a]];
        v *= kv[a][c[a]];
      }
      slice += v * v;
      slice_tail += 2.0 * std::fabs(v) * verr + verr * verr;
    }
    lhs += wt * slice * cellw;
    tail += wt * slice_tail * cellw;
  }
  out.lhs = lhs;
  out.tail_fraction = lhs > 0.0 ? tail / lhs : 0.0;
  if (lhs > 0.0 && tail > 0.01 * lhs)
    throw Error(ErrorCode::resolution, "window: series tail exceeds 1% of the value");

  const geometry::AveragedDistance avg =
      geometry::averaged_distance(box, y, (1.0 + epsilon) * T2, geometry::DistanceMetric::euclidean);
  out.dbar_sq = avg.dbar_sq;
  out.rhs = a_eps * a_eps * (T2 - T1) / std::pow(T1, double(n)) * std::exp(avg.log_integral);
  return out;
}

double cube_lower_rhs(double t, double half_diagonal, int n, CubeVariant variant) {
  if (t <= 0.0 || half_diagonal <= 0.0 || n < 1)
    throw Error(ErrorCode::invalid_argument, "cube: t, d and n must be positive");
  const double d = half_diagonal;
  const double nn = double(n);
  if (variant == CubeVariant::paper)
    return std::pow(nn, nn / 2.0) / std::pow(2.0 * d, nn) *
           std::exp(-kPi * kPi * nn * nn * t / (8.0 * d * d));
  return std::pow(nn, nn / 2.0) / std::pow(d, nn) *
         std::exp(-kPi * kPi * nn * nn * t / (2.0 * d * d));
}

LowerCheck l2_lower_check(std::span<const double> edges, std::span<const double> y, double t,
                          std::size_t nterms, std::size_t grid_per_axis) {
  if (edges.empty() || edges.size() > 3 || y.size() != edges.size())
    throw Error(ErrorCode::invalid_argument, "lower check: bad box/point");
  if (t <= 0.0) throw Error(ErrorCode::invalid_argument, "lower check: t must be positive");
  for (std::size_t a = 0; a < edges.size(); ++a)
    if (y[a] <= 0.0 || y[a] >= edges[a])
      throw Error(ErrorCode::invalid_argument, "lower check: y must be interior");

  LowerCheck out;
  out.integral_modal = 1.0;
  out.integral_quadrature = 1.0;
  out.principal_bound = 1.0;
  double tail_fraction = 0.0;

  for (std::size_t a = 0; a < edges.size(); ++a) {
    const double length = edges[a];
    const std::size_t terms = nterms ? nterms : auto_terms(length, 2.0 * t);
    const double w = kPi / length;

    // Modal route: Parseval turns the squared integral into a plain series.
    double modal = 0.0;
    for (std::size_t k = 1; k <= terms; ++k) {
      const double s = std::sin(double(k) * w * y[a]);
      modal += std::exp(-2.0 * t * double(k) * double(k) * w * w) * (2.0 / length) * s * s;
    }
    const double modal_tail = tail_bound_terms(length, 2.0 * t, terms);
    tail_fraction = std::max(tail_fraction, modal > 0.0 ? modal_tail / modal : 0.0);
    out.integral_modal *= modal;

    // Quadrature route over the same axis.
    const double hq = length / double(grid_per_axis);
    double quad = 0.0;
    for (std::size_t i = 0; i < grid_per_axis; ++i) {
      const double x = (double(i) + 0.5) * hq;
      const KernelValue k = interval_kernel(length, t, x, y[a], terms);
      quad += k.value * k.value * hq;
    }
    out.integral_quadrature *= quad;

    const double s1 = std::sin(w * y[a]);
    out.principal_bound *= std::exp(-2.0 * t * w * w) * (2.0 / length) * s1 * s1;
  }

  if (tail_fraction > 0.01)
    throw Error(ErrorCode::resolution, "lower check: series tail exceeds 1% of the value");
  return out;
}

}  // namespace heatctl::kernelbounds
