#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace heatctl::geometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double logaddexp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double log_erfc(double u) {
  if (u < 25.0) return std::log(std::erfc(u));
  // Asymptotic erfc(u) ~ exp(-u^2) / (u sqrt(pi)) (1 - 1/(2u^2) + ...).
  return -u * u - std::log(u) - 0.5 * std::log(kPi) + std::log1p(-0.5 / (u * u));
}

double GridDomain::cell_measure() const {
  double m = 1.0;
  for (int a = 0; a < dim; ++a) m *= h;
  return m;
}

std::size_t GridDomain::mask_count() const {
  std::size_t c = 0;
  for (auto v : mask) c += v != 0;
  return c;
}

std::size_t GridDomain::omega_count() const {
  std::size_t c = 0;
  for (auto v : omega) c += v != 0;
  return c;
}

double GridDomain::measure() const { return double(mask_count()) * cell_measure(); }
double GridDomain::omega_measure() const {
  if (omega_weight.empty()) return double(omega_count()) * cell_measure();
  double acc = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (omega[i]) acc += omega_weight[i];
  return acc * cell_measure();
}

std::optional<std::size_t> GridDomain::locate(const Point& p) const {
  std::array<std::size_t, 3> c{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    const double t = (p[a] - origin[a]) / h;
    if (t < 0.0) return std::nullopt;
    const std::size_t i = static_cast<std::size_t>(t);
    if (i >= dims[a]) return std::nullopt;
    c[a] = i;
  }
  const std::size_t idx = index(c[0], c[1], c[2]);
  if (!mask[idx]) return std::nullopt;
  return idx;
}

void GridDomain::validate() const {
  if (dim < 1 || dim > 3) throw Error(ErrorCode::invalid_argument, "domain: dim must be 1..3");
  if (h <= 0.0) throw Error(ErrorCode::invalid_argument, "domain: spacing must be positive");
  if (mask.size() != cells() || omega.size() != cells())
    throw Error(ErrorCode::invalid_argument, "domain: mask size mismatch");
  if (!omega_weight.empty() && omega_weight.size() != cells())
    throw Error(ErrorCode::invalid_argument, "domain: omega weight size mismatch");
  std::size_t inside = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    inside += mask[i] != 0;
    if (omega[i] && !mask[i])
      throw Error(ErrorCode::invalid_argument, "domain: omega not contained in mask");
    if (!omega_weight.empty()) {
      const double w = omega_weight[i];
      if (!(w >= 0.0 && w <= 1.0) || (w > 0.0) != (omega[i] != 0))
        throw Error(ErrorCode::invalid_argument, "domain: omega weights inconsistent");
    }
  }
  if (inside == 0) throw Error(ErrorCode::invalid_argument, "domain: empty mask");

  // Single connected component over face adjacency.
  std::vector<std::uint8_t> seen(cells(), 0);
  std::queue<std::size_t> frontier;
  std::size_t start = 0;
  while (!mask[start]) ++start;
  seen[start] = 1;
  frontier.push(start);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    const auto c = unpack(u);
    for (int a = 0; a < dim; ++a) {
      for (int s = -1; s <= 1; s += 2) {
        const long t = long(c[a]) + s;
        if (t < 0 || t >= long(dims[a])) continue;
        auto cc = c;
        cc[a] = std::size_t(t);
        const std::size_t v = index(cc[0], cc[1], cc[2]);
        if (mask[v] && !seen[v]) {
          seen[v] = 1;
          ++reached;
          frontier.push(v);
        }
      }
    }
  }
  if (reached != inside)
    throw Error(ErrorCode::invalid_argument, "domain: mask is not connected");
}

GridDomain make_box_domain(std::span<const double> edges, double h) {
  if (edges.empty() || edges.size() > 3)
    throw Error(ErrorCode::invalid_argument, "box: dimension must be 1..3");
  if (h <= 0.0) throw Error(ErrorCode::invalid_argument, "box: spacing must be positive");
  GridDomain d;
  d.dim = int(edges.size());
  d.h = h;
  for (int a = 0; a < d.dim; ++a) {
    if (edges[a] <= 0.0) throw Error(ErrorCode::invalid_argument, "box: edges must be positive");
    const auto interior = std::max<std::size_t>(1, std::size_t(std::llround(edges[a] / h)));
    d.dims[a] = interior + 2;  // ghost ring: the whole box boundary is real
    d.origin[a] = -h;
  }
  d.mask.assign(d.cells(), 0);
  d.omega.assign(d.cells(), 0);
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    const auto c = d.unpack(idx);
    bool in = true;
    for (int a = 0; a < d.dim; ++a)
      if (c[a] == 0 || c[a] + 1 == d.dims[a]) in = false;
    d.mask[idx] = in ? 1 : 0;
  }
  d.validate();
  return d;
}

void add_omega_box(GridDomain& d, const Point& lo, const Point& hi) {
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    if (!d.mask[idx]) continue;
    const Point p = d.center(idx);
    bool in = true;
    for (int a = 0; a < d.dim; ++a)
      if (p[a] < lo[a] || p[a] > hi[a]) in = false;
    if (in) d.omega[idx] = 1;
  }
}

GridDomain make_box_node_domain(std::span<const double> edges, double h) {
  if (edges.empty() || edges.size() > 3)
    throw Error(ErrorCode::invalid_argument, "node box: dimension must be 1..3");
  if (h <= 0.0) throw Error(ErrorCode::invalid_argument, "node box: spacing must be positive");
  GridDomain d;
  d.dim = int(edges.size());
  d.h = h;
  std::array<std::size_t, 3> interior{1, 1, 1};
  for (int a = 0; a < d.dim; ++a) {
    const auto n = std::size_t(std::llround(edges[a] / h));
    if (n < 2) throw Error(ErrorCode::invalid_argument, "node box: no interior node");
    interior[a] = n - 1;
    d.dims[a] = n + 1;
    d.origin[a] = -0.5 * h;  // node i sits exactly at i * h
  }
  d.mask.assign(d.cells(), 0);
  d.omega.assign(d.cells(), 0);
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    const auto c = d.unpack(idx);
    bool in = true;
    for (int a = 0; a < d.dim; ++a)
      if (c[a] == 0 || c[a] > interior[a]) in = false;
    d.mask[idx] = in ? 1 : 0;
  }
  d.validate();
  return d;
}

GridDomain make_interval_node_domain(double length, double h) {
  const double edges[1] = {length};
  return make_box_node_domain(edges, h);
}

double RadiusProfile::operator()(double z) const {
  switch (kind) {
    case Kind::constant:
      return p0;
    case Kind::capped_inverse:
      return std::min(p0, p1 / (1.0 + std::fabs(z)));
    case Kind::inverse_log:
      return 1.0 / std::log(p0 + std::fabs(z));
    case Kind::exp_decay:
      return p0 * std::exp(-p1 * std::fabs(z));
  }
  return 0.0;
}

double RadiusProfile::sup() const {
  switch (kind) {
    case Kind::constant:
      return p0;
    case Kind::capped_inverse:
      return std::min(p0, p1);
    case Kind::inverse_log:
      return 1.0 / std::log(p0);
    case Kind::exp_decay:
      return p0;
  }
  return 0.0;
}

bool RadiusProfile::nonincreasing_on_positive_axis() const {
  switch (kind) {
    case Kind::constant:
      return true;
    case Kind::capped_inverse:
      return true;
    case Kind::inverse_log:
      return p0 > 1.0;
    case Kind::exp_decay:
      return p1 >= 0.0;
  }
  return false;
}

namespace {

// Odd cell count so the section has a cell centered on the axis.
std::size_t section_cells(double radius, double h) {
  return 2 * (std::size_t(std::ceil(radius / h)) + 1) + 1;
}

// Area fraction of the cell centered at (cx, cy) covered by the disk of
// the given radius, estimated on a midpoint 5x5 subsample.
double disk_fraction(double cx, double cy, double h, double radius) {
  if (radius <= 0.0) return 0.0;
  int inside = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      const double x = cx + ((double(a) + 0.5) / 5.0 - 0.5) * h;
      const double y = cy + ((double(b) + 0.5) / 5.0 - 0.5) * h;
      if (x * x + y * y < radius * radius) ++inside;
    }
  return double(inside) / 25.0;
}

// Domain membership stays boolean (majority rule); control regions instead
// carry the fraction as a weight so sub-cell measure is not quantized away.
bool in_section(const ScenarioSpec& spec, double x, double y, double h) {
  if (spec.section_shape == "square")
    return std::fabs(x) < spec.section_radius && std::fabs(y) < spec.section_radius;
  return 2.0 * disk_fraction(x, y, h, spec.section_radius) >= 1.0;
}

}  // namespace

GridDomain build_scenario(const ScenarioSpec& spec) {
  if (spec.h <= 0.0) throw Error(ErrorCode::invalid_argument, "scenario: spacing must be positive");
  if (spec.axis_max <= spec.axis_min)
    throw Error(ErrorCode::invalid_argument, "scenario: empty axis range");
  if (spec.max_point_z > spec.axis_max)
    throw Error(ErrorCode::invalid_argument,
                "scenario: truncation shorter than the farthest requested point");

  GridDomain d;
  d.h = spec.h;
  const double h = spec.h;
  const auto axis_cells =
      std::max<std::size_t>(1, std::size_t(std::llround((spec.axis_max - spec.axis_min) / h)));

  if (spec.kind == ScenarioKind::strip) {
    d.dim = 2;
    const auto interior = std::max<std::size_t>(1, std::size_t(std::llround(spec.strip_width / h)));
    d.dims = {interior + 2, axis_cells, 1};
    d.origin = {-h, spec.axis_min, 0.0};
    d.truncated_axis = 1;
    d.mask.assign(d.cells(), 0);
    d.omega.assign(d.cells(), 0);
    for (std::size_t idx = 0; idx < d.cells(); ++idx) {
      const auto c = d.unpack(idx);
      if (c[0] == 0 || c[0] + 1 == d.dims[0]) continue;
      d.mask[idx] = 1;
      if (c[0] == 1) d.omega[idx] = 1;  // one cell layer along the controlled side x=0
    }
    d.omega_tail_density = h;
    d.validate();
    return d;
  }

  d.dim = 3;
  if (spec.kind == ScenarioKind::rod_shrinking_cylinder_control &&
      spec.profile.sup() > spec.section_radius)
    throw Error(ErrorCode::invalid_argument, "scenario: control cylinder exceeds the section");
  if (spec.kind == ScenarioKind::rod_with_interior_rod &&
      spec.omega_radius > spec.section_radius)
    throw Error(ErrorCode::invalid_argument, "scenario: interior rod exceeds the section");
  const std::size_t nsec =
      section_cells(spec.kind == ScenarioKind::shrinking_rod ? spec.profile.sup()
                                                             : spec.section_radius,
                    h);
  d.dims = {nsec, nsec, axis_cells};
  d.origin = {-0.5 * double(nsec) * h, -0.5 * double(nsec) * h, spec.axis_min};
  d.truncated_axis = 2;
  d.mask.assign(d.cells(), 0);
  d.omega.assign(d.cells(), 0);
  d.omega_weight.assign(d.cells(), 0.0);

  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    const Point p = d.center(idx);
    const double x = p[0], y = p[1], z = p[2];
    bool in_mask = false;
    double w = 0.0;  // omega area fraction of the cell
    switch (spec.kind) {
      case ScenarioKind::rod_with_interior_rod:
        in_mask = in_section(spec, x, y, h);
        if (in_mask) w = disk_fraction(x, y, h, spec.omega_radius);
        break;
      case ScenarioKind::rod_with_slabs: {
        in_mask = in_section(spec, x, y, h);
        bool in_slab = false;
        for (const Slab& s : spec.slabs)
          if (std::fabs(z - s.center) <= s.half_width) in_slab = true;
        if (in_mask && !in_slab) w = 1.0;
        break;
      }
      case ScenarioKind::rod_shrinking_cylinder_control:
        in_mask = in_section(spec, x, y, h);
        if (in_mask) w = disk_fraction(x, y, h, spec.profile(z));
        break;
      case ScenarioKind::shrinking_rod:
        in_mask = 2.0 * disk_fraction(x, y, h, spec.profile(std::fabs(z))) >= 1.0;
        if (in_mask && std::fabs(z) <= spec.omega_zmax)
          w = disk_fraction(x, y, h, spec.profile(std::fabs(z)));
        break;
      case ScenarioKind::strip:
        break;
    }
    d.mask[idx] = in_mask ? 1 : 0;
    d.omega[idx] = w > 0.0 ? 1 : 0;
    d.omega_weight[idx] = w;
  }

  switch (spec.kind) {
    case ScenarioKind::rod_with_interior_rod:
      d.omega_tail_density = kPi * spec.omega_radius * spec.omega_radius;
      break;
    case ScenarioKind::rod_with_slabs:
      // Beyond the truncation omega fills the whole section.
      if (spec.section_shape == "square")
        d.omega_tail_density = 4.0 * spec.section_radius * spec.section_radius;
      else
        d.omega_tail_density = kPi * spec.section_radius * spec.section_radius;
      break;
    case ScenarioKind::rod_shrinking_cylinder_control: {
      const double r = std::max(spec.profile(spec.axis_min), spec.profile(spec.axis_max));
      d.omega_tail_density = kPi * r * r;
      break;
    }
    case ScenarioKind::shrinking_rod:
      if (spec.omega_zmax > std::min(-spec.axis_min, spec.axis_max))
        throw Error(ErrorCode::invalid_argument, "scenario: omega reaches the truncation");
      d.omega_tail_density = 0.0;
      break;
    case ScenarioKind::strip:
      break;
  }

  d.validate();
  return d;
}

namespace {

struct Step {
  std::array<int, 3> off{};
  double unit_len = 0.0;
  std::vector<std::array<int, 3>> between;  // lattice points the step must not jump over
};

std::vector<Step> make_stencil(int dim) {
  std::vector<std::array<int, 3>> offs;
  if (dim == 1) {
    offs = {{1, 0, 0}, {-1, 0, 0}};
  } else if (dim == 2) {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        if (dx || dy) offs.push_back({dx, dy, 0});
    for (int sx : {-1, 1})
      for (int sy : {-1, 1}) {
        offs.push_back({sx, 2 * sy, 0});
        offs.push_back({2 * sx, sy, 0});
      }
  } else {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz)
          if (dx || dy || dz) offs.push_back({dx, dy, dz});
  }

  std::vector<Step> steps;
  steps.reserve(offs.size());
  for (const auto& o : offs) {
    Step s;
    s.off = o;
    s.unit_len = std::sqrt(double(o[0] * o[0] + o[1] * o[1] + o[2] * o[2]));
    for (int x = std::min(0, o[0]); x <= std::max(0, o[0]); ++x)
      for (int y = std::min(0, o[1]); y <= std::max(0, o[1]); ++y)
        for (int z = std::min(0, o[2]); z <= std::max(0, o[2]); ++z) {
          if ((x == 0 && y == 0 && z == 0) || (x == o[0] && y == o[1] && z == o[2])) continue;
          s.between.push_back({x, y, z});
        }
    steps.push_back(std::move(s));
  }
  return steps;
}

}  // namespace

DistanceField geodesic_distance_field(const GridDomain& d, const Point& y) {
  const auto src = d.locate(y);
  if (!src) throw Error(ErrorCode::invalid_argument, "distance field: point outside mask");

  DistanceField f;
  f.source_cell = *src;
  f.source = d.center(*src);
  f.dist.assign(d.cells(), kInf);
  f.dist[*src] = 0.0;

  const auto steps = make_stencil(d.dim);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.emplace(0.0, *src);

  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > f.dist[u]) continue;
    const auto c = d.unpack(u);
    for (const Step& s : steps) {
      bool ok = true;
      std::array<long, 3> t{};
      for (int a = 0; a < 3; ++a) {
        t[a] = long(c[a]) + s.off[a];
        if (t[a] < 0 || t[a] >= long(d.dims[a])) ok = false;
      }
      if (!ok) continue;
      const std::size_t v = d.index(std::size_t(t[0]), std::size_t(t[1]), std::size_t(t[2]));
      if (!d.mask[v]) continue;
      for (const auto& b : s.between) {
        const long bx = long(c[0]) + b[0], by = long(c[1]) + b[1], bz = long(c[2]) + b[2];
        if (!d.mask[d.index(std::size_t(bx), std::size_t(by), std::size_t(bz))]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const double nd = du + s.unit_len * d.h;
      if (nd < f.dist[v]) {
        f.dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }

  f.boundary_distance = boundary_distance(d, y);
  return f;
}

double boundary_distance(const GridDomain& d, const Point& y, bool half_cell_correction) {
  const auto src = d.locate(y);
  if (!src) throw Error(ErrorCode::invalid_argument, "boundary distance: point outside mask");
  const Point p = d.center(*src);
  double best = kInf;
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    if (d.mask[idx]) continue;
    const Point q = d.center(idx);
    double s = 0.0;
    for (int a = 0; a < d.dim; ++a) s += (q[a] - p[a]) * (q[a] - p[a]);
    best = std::min(best, s);
  }
  if (best == kInf) return kInf;  // no exterior cell in the lattice
  const double dist = std::sqrt(best) - (half_cell_correction ? 0.5 * d.h : 0.0);
  return std::max(dist, 0.0);
}

AveragedDistance averaged_distance(const GridDomain& d, const Point& y, double T,
                                   DistanceMetric metric) {
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "averaged distance: T must be positive");
  AveragedDistance out;

  std::vector<double> dist;
  Point ref{};
  if (metric == DistanceMetric::geodesic) {
    DistanceField f = geodesic_distance_field(d, y);
    dist = std::move(f.dist);
  } else {
    const auto src = d.locate(y);
    if (!src) throw Error(ErrorCode::invalid_argument, "averaged distance: point outside mask");
    ref = d.center(*src);
  }

  // log-sum-exp over omega cells of -d^2/2T + log(weight); distances of far
  // scenarios make the raw exponentials underflow long before the result is
  // meaningless.
  double m = -kInf;
  out.d_min = kInf;
  std::vector<double> expo;
  expo.reserve(d.omega_count());
  for (std::size_t idx = 0; idx < d.cells(); ++idx) {
    if (!d.omega[idx]) continue;
    double dd;
    if (metric == DistanceMetric::geodesic) {
      dd = dist[idx];
    } else {
      const Point q = d.center(idx);
      double s = 0.0;
      for (int a = 0; a < d.dim; ++a) s += (q[a] - ref[a]) * (q[a] - ref[a]);
      dd = std::sqrt(s);
    }
    if (!std::isfinite(dd)) continue;  // unreachable omega cells carry no mass
    out.d_min = std::min(out.d_min, dd);
    const double e = -dd * dd / (2.0 * T) + std::log(d.weight(idx));
    expo.push_back(e);
    m = std::max(m, e);
  }

  if (expo.empty()) {
    out.omega_empty = true;
    out.dbar_sq = kInf;
    out.log_integral = -kInf;
    out.tail_log = -kInf;
    return out;
  }

  double sum = 0.0;
  for (double e : expo) sum += std::exp(e - m);
  out.log_integral = m + std::log(sum) + double(d.dim) * std::log(d.h);
  out.dbar_sq = -2.0 * T * out.log_integral;

  out.tail_log = -kInf;
  if (d.truncated_axis >= 0 && d.omega_tail_density > 0.0) {
    const int ax = d.truncated_axis;
    const double lo = d.origin[ax];
    const double hi = d.origin[ax] + double(d.dims[ax]) * d.h;
    const double gap_lo = std::max(y[ax] - lo, 0.0);
    const double gap_hi = std::max(hi - y[ax], 0.0);
    const double s = std::sqrt(2.0 * T);
    const double log_gauss =
        logaddexp(log_erfc(gap_lo / s), log_erfc(gap_hi / s)) +
        0.5 * std::log(kPi * T / 2.0);
    out.tail_log = std::log(d.omega_tail_density) + log_gauss;
    out.tail_ok = out.tail_log <= out.log_integral + std::log(0.01);
  }
  return out;
}

double bounded_distance(double d_boundary, double T, int n) {
  if (T <= 0.0 || n < 1)
    throw Error(ErrorCode::invalid_argument, "bounded distance: bad parameters");
  return std::min(d_boundary, T * kPi * kPi * double(n) / 4.0);
}

GncReport gnc_evaluate(const GridDomain& d, std::span<const Point> points, double tbar,
                       double kappa, ConstantVariant variant, const GncOptions& opts) {
  if (kappa <= 1.0)
    throw Error(ErrorCode::hypothesis_violation, "gnc: kappa must exceed 1");
  if (tbar <= 0.0) throw Error(ErrorCode::invalid_argument, "gnc: tbar must be positive");
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "gnc: no points given");

  GncReport rep;
  rep.tbar = tbar;
  rep.kappa = kappa;
  rep.variant = variant;
  rep.epsilon = std::min(0.5, 0.5 * (kappa - 1.0));
  rep.kappa_prime = kappa / (1.0 + rep.epsilon);
  rep.tdbar = tbar / (1.0 + rep.epsilon);

  const double n = double(d.dim);
  const double c_n = (variant == ConstantVariant::paper) ? kPi * kPi * n * n / 4.0
                                                         : kPi * kPi * n * n;

  for (const Point& y : points) {
    GncPoint gp;
    gp.y = y;
    const AveragedDistance avg = averaged_distance(d, y, tbar, DistanceMetric::geodesic);
    if (!avg.tail_ok)
      throw Error(ErrorCode::resolution, "gnc: truncation tail exceeds 1% of the omega integral");
    gp.dbar_sq = avg.dbar_sq;
    gp.d_boundary = boundary_distance(d, y);
    gp.d_bounded_tbar = bounded_distance(gp.d_boundary, tbar, d.dim);
    gp.d_bounded_tdbar = bounded_distance(gp.d_boundary, rep.tdbar, d.dim);
    gp.value = gp.dbar_sq - kappa * c_n * (tbar / gp.d_bounded_tbar) * (tbar / gp.d_bounded_tbar);
    gp.s = gp.dbar_sq / (2.0 * tbar) -
           rep.kappa_prime * 0.5 * c_n * rep.tdbar / (gp.d_bounded_tdbar * gp.d_bounded_tdbar);
    rep.points.push_back(gp);
  }

  // Divergence proxy: increasing past the configured index and climbing by
  // more than the threshold.  Reported as numerical evidence, never a proof.
  const std::size_t k0 = std::min(opts.divergence_start, rep.points.size() - 1);
  bool increasing = true;
  for (std::size_t k = k0 + 1; k < rep.points.size(); ++k)
    if (!(rep.points[k].value > rep.points[k - 1].value)) increasing = false;
  rep.divergent = increasing && rep.points.size() > k0 + 1 &&
                  rep.points.back().value - rep.points[k0].value > opts.divergence_threshold;
  return rep;
}

ConvolutionBound rod_iii_upper(const RadiusProfile& profile, double T, double z_k,
                               double axis_min, double axis_max, std::size_t simpson_cells) {
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "rod bound: T must be positive");
  if (axis_max <= axis_min) throw Error(ErrorCode::invalid_argument, "rod bound: empty axis");
  std::size_t n = simpson_cells;
  if (n % 2) ++n;
  const double dz = (axis_max - axis_min) / double(n);

  auto f = [&](double z) {
    const double r = profile(z);
    const double u = z - z_k;
    return kPi * r * r * std::exp(-u * u / (2.0 * T));
  };
  double sum = f(axis_min) + f(axis_max);
  for (std::size_t i = 1; i < n; ++i) sum += f(axis_min + double(i) * dz) * (i % 2 ? 4.0 : 2.0);

  ConvolutionBound out;
  out.value = sum * dz / 3.0;

  const double rsup = profile.sup();
  const double s = std::sqrt(2.0 * T);
  const double tail_log =
      std::log(kPi * rsup * rsup) + 0.5 * std::log(kPi * T / 2.0) +
      logaddexp(log_erfc((axis_max - z_k) / s), log_erfc((z_k - axis_min) / s));
  out.tail_bound = std::exp(tail_log);
  if (out.tail_bound > 0.01 * out.value)
    throw Error(ErrorCode::resolution, "rod bound: truncation tail exceeds 1% of the value");
  return out;
}

ShrinkRodReport shrinkrod_check(const RadiusProfile& profile, std::span<const double> zs,
                                std::span<const double> ds, double kappa_prime, double T, int n,
                                const GridDomain* scenario, const GncOptions& opts) {
  if (kappa_prime <= 1.0)
    throw Error(ErrorCode::hypothesis_violation, "shrink rod: kappa' must exceed 1");
  if (zs.size() != ds.size() || zs.empty())
    throw Error(ErrorCode::invalid_argument, "shrink rod: z and d lists must match");
  if (!profile.nonincreasing_on_positive_axis())
    throw Error(ErrorCode::hypothesis_violation, "shrink rod: profile must be non-increasing");

  ShrinkRodReport rep;
  const double c = kappa_prime * kPi * kPi * double(n) * double(n) / 4.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    ShrinkRodEntry e;
    e.z = zs[k];
    e.d = ds[k];
    const double r = profile(zs[k] + ds[k]);
    e.q = ds[k] * ds[k] - c * (T / r) * (T / r);

    if (scenario) {
      const Point m{0.0, 0.0, zs[k]};
      const double slack = 2.0 * scenario->h;
      const double dpart = boundary_distance(*scenario, m);
      e.boundary_margin = dpart - r;
      e.boundary_ok = e.boundary_margin >= -slack;
      const AveragedDistance avg =
          averaged_distance(*scenario, m, std::max(T, 1e-6), DistanceMetric::geodesic);
      e.omega_margin = avg.d_min - ds[k];
      e.omega_ok = e.omega_margin >= -slack;
      if (!e.boundary_ok || !e.omega_ok) rep.reductions_hold = false;
    }
    rep.entries.push_back(e);
  }

  const std::size_t k0 = std::min(opts.divergence_start, rep.entries.size() - 1);
  bool increasing = true;
  for (std::size_t k = k0 + 1; k < rep.entries.size(); ++k)
    if (!(rep.entries[k].q > rep.entries[k - 1].q)) increasing = false;
  rep.divergent = increasing && rep.entries.size() > k0 + 1 &&
                  rep.entries.back().q - rep.entries[k0].q > opts.divergence_threshold;
  return rep;
}

}  // namespace heatctl::geometry
