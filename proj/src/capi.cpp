#include "heatctl/heatctl.h"

#include <cstring>
#include <exception>
#include <string>

#include "control.hpp"
#include "geometry.hpp"
#include "kernelbounds.hpp"
#include "systems.hpp"
#include "tensorprod.hpp"

struct heatctl_system {
  heatctl::systems::SpectralSystem sys;
};

struct heatctl_domain {
  heatctl::geometry::GridDomain dom;
};

struct heatctl_field {
  heatctl::geometry::DistanceField field;
};

namespace {

thread_local std::string g_last_error;

heatctl_status map_code(heatctl::ErrorCode code) {
  using heatctl::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
      return HEATCTL_ERR_INVALID_ARGUMENT;
    case ErrorCode::singular_system:
      return HEATCTL_ERR_SINGULAR;
    case ErrorCode::hypothesis_violation:
      return HEATCTL_ERR_HYPOTHESIS;
    case ErrorCode::size_limit:
      return HEATCTL_ERR_SIZE_LIMIT;
    case ErrorCode::resolution:
      return HEATCTL_ERR_RESOLUTION;
    case ErrorCode::no_convergence:
      return HEATCTL_ERR_NO_CONVERGENCE;
    case ErrorCode::io:
      return HEATCTL_ERR_IO;
  }
  return HEATCTL_ERR_INTERNAL;
}

template <class Fn>
heatctl_status guarded(Fn&& fn) {
  try {
    fn();
    return HEATCTL_OK;
  } catch (const heatctl::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HEATCTL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HEATCTL_ERR_INTERNAL;
  }
}

heatctl_status fail_arg(const char* msg) {
  g_last_error = msg;
  return HEATCTL_ERR_INVALID_ARGUMENT;
}

void fill_report(const heatctl::control::CostReport& rep, heatctl_cost_report* out) {
  out->horizon = rep.horizon;
  out->kappa = rep.kappa;
  out->kappa_sq = rep.kappa_sq;
  out->log_kappa_sq = rep.log_kappa_sq;
  out->admissibility = rep.admissibility;
  out->min_gramian_eigenvalue = rep.min_gramian_eigenvalue;
  out->modes = rep.modes;
  out->is_infinite = rep.infinite ? 1 : 0;
}

heatctl::geometry::RadiusProfile to_profile(const heatctl_profile& p) {
  using Kind = heatctl::geometry::RadiusProfile::Kind;
  heatctl::geometry::RadiusProfile prof;
  switch (p.kind) {
    case 0:
      prof.kind = Kind::constant;
      break;
    case 1:
      prof.kind = Kind::capped_inverse;
      break;
    case 2:
      prof.kind = Kind::inverse_log;
      break;
    case 3:
      prof.kind = Kind::exp_decay;
      break;
    default:
      throw heatctl::Error(heatctl::ErrorCode::invalid_argument, "unknown profile kind");
  }
  prof.p0 = p.p0;
  prof.p1 = p.p1;
  return prof;
}

heatctl::geometry::Point to_point(const double* p, int dim) {
  heatctl::geometry::Point q{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) q[a] = p[a];
  return q;
}

}  // namespace

extern "C" {

const char* heatctl_last_error(void) { return g_last_error.c_str(); }

const char* heatctl_version(void) { return "heatctl 1.0.0"; }

/* ---------------- systems ---------------- */

heatctl_status heatctl_system_interval_spectrum(double length, size_t modes,
                                                heatctl_system** out) {
  if (!out) return fail_arg("null output handle");
  return guarded([&] {
    *out = new heatctl_system{heatctl::systems::dirichlet_interval_spectrum(length, modes)};
  });
}

heatctl_status heatctl_system_boundary_observation(double length, size_t modes,
                                                   heatctl_system** out) {
  if (!out) return fail_arg("null output handle");
  return guarded([&] {
    *out = new heatctl_system{heatctl::systems::boundary_observation(length, modes)};
  });
}

heatctl_status heatctl_system_interior_observation(double length, size_t modes,
                                                   const double* interval_bounds,
                                                   size_t n_intervals, size_t nodes_per_interval,
                                                   heatctl_system** out) {
  if (!out || !interval_bounds) return fail_arg("null argument");
  return guarded([&] {
    std::vector<heatctl::systems::Interval> omega(n_intervals);
    for (size_t i = 0; i < n_intervals; ++i)
      omega[i] = {interval_bounds[2 * i], interval_bounds[2 * i + 1]};
    *out = new heatctl_system{
        heatctl::systems::interior_observation(length, modes, omega, nodes_per_interval)};
  });
}

heatctl_status heatctl_system_custom(const double* rates, size_t modes, const double* obs,
                                     size_t outputs, heatctl_system** out) {
  if (!out || !rates || (outputs > 0 && !obs)) return fail_arg("null argument");
  return guarded([&] {
    heatctl::systems::SpectralSystem sys;
    sys.rates.assign(rates, rates + modes);
    if (outputs > 0) {
      sys.obs = heatctl::numerics::Matrix(outputs, modes);
      std::memcpy(sys.obs.data().data(), obs, outputs * modes * sizeof(double));
    }
    sys.label = "custom";
    sys.validate();
    *out = new heatctl_system{std::move(sys)};
  });
}

heatctl_status heatctl_system_kronecker_sum(const heatctl_system* factor, const double* bvals,
                                            size_t m, size_t size_limit, heatctl_system** out) {
  if (!out || !factor || !bvals) return fail_arg("null argument");
  return guarded([&] {
    auto prod = heatctl::tensorprod::kronecker_sum(factor->sys, std::span(bvals, m), size_limit);
    *out = new heatctl_system{std::move(prod.assembled)};
  });
}

void heatctl_system_free(heatctl_system* sys) { delete sys; }

size_t heatctl_system_modes(const heatctl_system* sys) { return sys ? sys->sys.modes() : 0; }

size_t heatctl_system_outputs(const heatctl_system* sys) { return sys ? sys->sys.outputs() : 0; }

heatctl_status heatctl_system_rates(const heatctl_system* sys, double* buf, size_t len) {
  if (!sys || !buf) return fail_arg("null argument");
  if (len < sys->sys.modes()) return fail_arg("buffer too small");
  std::memcpy(buf, sys->sys.rates.data(), sys->sys.modes() * sizeof(double));
  return HEATCTL_OK;
}

heatctl_status heatctl_system_observation(const heatctl_system* sys, double* buf, size_t len) {
  if (!sys || !buf) return fail_arg("null argument");
  const size_t need = sys->sys.obs.rows() * sys->sys.obs.cols();
  if (len < need) return fail_arg("buffer too small");
  std::memcpy(buf, sys->sys.obs.data().data(), need * sizeof(double));
  return HEATCTL_OK;
}

/* ---------------- control ---------------- */

heatctl_status heatctl_control_cost(const heatctl_system* sys, double T, int quad_precision,
                                    heatctl_cost_report* out) {
  if (!sys || !out) return fail_arg("null argument");
  return guarded([&] {
    heatctl::control::CostOptions opts;
    opts.quad_precision = quad_precision != 0;
    fill_report(heatctl::control::control_cost(sys->sys, T, opts), out);
  });
}

heatctl_status heatctl_admissibility_constant(const heatctl_system* sys, double T, double* out) {
  if (!sys || !out) return fail_arg("null argument");
  return guarded([&] { *out = heatctl::control::admissibility_constant(sys->sys, T); });
}

heatctl_status heatctl_min_norm_control(const heatctl_system* sys, double T, const double* zeta0,
                                        size_t n, size_t samples, double* times, double* values,
                                        double* energy_sq_modal, double* energy_sq_trapezoid,
                                        double* terminal_residual) {
  if (!sys || !zeta0 || !times || !values) return fail_arg("null argument");
  if (n != sys->sys.modes()) return fail_arg("state size mismatch");
  return guarded([&] {
    const auto traj = heatctl::control::min_norm_control(
        sys->sys, T, heatctl::numerics::Vector(zeta0, zeta0 + n), samples);
    std::memcpy(times, traj.times.data(), samples * sizeof(double));
    std::memcpy(values, traj.values.data().data(),
                samples * sys->sys.outputs() * sizeof(double));
    if (energy_sq_modal) *energy_sq_modal = traj.energy_sq_modal;
    if (energy_sq_trapezoid) *energy_sq_trapezoid = traj.energy_sq_trapezoid;
    if (terminal_residual) *terminal_residual = traj.terminal_residual;
  });
}

heatctl_status heatctl_observability_quotient(const heatctl_system* sys, double T,
                                              const double* f0, size_t n, double* out) {
  if (!sys || !f0 || !out) return fail_arg("null argument");
  return guarded([&] {
    *out = heatctl::control::observability_quotient(sys->sys, T,
                                                    heatctl::numerics::Vector(f0, f0 + n));
  });
}

heatctl_status heatctl_product_observability_quotient(const heatctl_system* factor,
                                                      const double* bvals, size_t m, double T,
                                                      const double* fx, size_t nx,
                                                      const double* fy, size_t ny, double* out) {
  if (!factor || !bvals || !fx || !fy || !out) return fail_arg("null argument");
  return guarded([&] {
    *out = heatctl::tensorprod::product_observability_quotient(
        factor->sys, std::span(bvals, m), T, heatctl::numerics::Vector(fx, fx + nx),
        heatctl::numerics::Vector(fy, fy + ny));
  });
}

heatctl_status heatctl_alpha_star_probe(double length, const double* horizons, size_t n,
                                        double rate_cutoff_coeff, double* values,
                                        size_t* mode_counts) {
  if (!horizons || !values) return fail_arg("null argument");
  return guarded([&] {
    const auto rows =
        heatctl::control::alpha_star_probe(length, std::span(horizons, n), rate_cutoff_coeff);
    for (size_t i = 0; i < rows.size(); ++i) {
      values[i] = rows[i].normalized_log_cost;
      if (mode_counts) mode_counts[i] = rows[i].modes;
    }
  });
}

/* ---------------- tensor products ---------------- */

heatctl_status heatctl_tensor_check(const heatctl_system* factor, const double* bvals, size_t m,
                                    double T, double tolerance, heatctl_lemma_check* out) {
  if (!factor || !bvals || !out) return fail_arg("null argument");
  return guarded([&] {
    const auto chk =
        heatctl::tensorprod::check_lemma(factor->sys, std::span(bvals, m), T, tolerance);
    out->kappa_product = chk.kappa_product;
    out->kappa_factor = chk.kappa_factor;
    out->kappa_fiber_max = chk.kappa_fiber_max;
    out->admissibility_product = chk.admissibility_product;
    out->admissibility_factor = chk.admissibility_factor;
    out->tolerance = chk.tolerance;
    out->worst_fiber = chk.worst_fiber;
    out->pass_inequality = chk.pass_inequality ? 1 : 0;
    out->pass_decoupling = chk.pass_decoupling ? 1 : 0;
    out->pass = chk.pass ? 1 : 0;
  });
}

heatctl_status heatctl_product_cost(const heatctl_system* factor, const double* bvals, size_t m,
                                    double T, size_t size_limit, heatctl_cost_report* out) {
  if (!factor || !bvals || !out) return fail_arg("null argument");
  return guarded([&] {
    const auto prod =
        heatctl::tensorprod::kronecker_sum(factor->sys, std::span(bvals, m), size_limit);
    fill_report(heatctl::tensorprod::product_cost(prod, T, {}, size_limit), out);
  });
}

heatctl_status heatctl_fiber_costs(const heatctl_system* factor, const double* bvals, size_t m,
                                   double T, heatctl_cost_report* out) {
  if (!factor || !bvals || !out) return fail_arg("null argument");
  return guarded([&] {
    const auto reps = heatctl::tensorprod::fiber_costs(factor->sys, std::span(bvals, m), T);
    for (size_t i = 0; i < reps.size(); ++i) fill_report(reps[i], &out[i]);
  });
}

/* ---------------- kernels ---------------- */

heatctl_status heatctl_interval_kernel(double length, double t, double x, double y,
                                       size_t nterms, double* value, double* tail) {
  if (!value) return fail_arg("null argument");
  return guarded([&] {
    const auto k = heatctl::kernelbounds::interval_kernel(length, t, x, y, nterms);
    *value = k.value;
    if (tail) *tail = k.tail_bound;
  });
}

heatctl_status heatctl_kernel_auto_terms(double length, double t, double tail_target,
                                         size_t* out) {
  if (!out) return fail_arg("null argument");
  return guarded([&] { *out = heatctl::kernelbounds::auto_terms(length, t, tail_target); });
}

heatctl_status heatctl_box_kernel(const double* edges, size_t dim, double t, const double* x,
                                  const double* y, size_t nterms, double* value, double* tail) {
  if (!edges || !x || !y || !value) return fail_arg("null argument");
  return guarded([&] {
    const auto k = heatctl::kernelbounds::box_kernel(std::span(edges, dim), t, std::span(x, dim),
                                                     std::span(y, dim), nterms);
    *value = k.value;
    if (tail) *tail = k.tail_bound;
  });
}

heatctl_status heatctl_fit_gaussian_constant(const double* edges, size_t dim, double epsilon,
                                             const double* ts, size_t nts, const double* xs,
                                             size_t nxs, const double* ys, size_t nys,
                                             size_t nterms, double* out) {
  if (!edges || !ts || !xs || !ys || !out) return fail_arg("null argument");
  return guarded([&] {
    std::vector<heatctl::geometry::Point> xpts(nxs), ypts(nys);
    for (size_t i = 0; i < nxs; ++i) xpts[i] = to_point(xs + i * dim, int(dim));
    for (size_t i = 0; i < nys; ++i) ypts[i] = to_point(ys + i * dim, int(dim));
    *out = heatctl::kernelbounds::fit_gaussian_constant(std::span(edges, dim), epsilon,
                                                        std::span(ts, nts), xpts, ypts, nterms);
  });
}

heatctl_status heatctl_l2_window_upper(const heatctl_domain* box, const double* y, double T1,
                                       double T2, double epsilon, double a_eps, size_t nterms,
                                       double* lhs, double* rhs, double* dbar_sq,
                                       double* tail_fraction) {
  if (!box || !y || !lhs || !rhs) return fail_arg("null argument");
  return guarded([&] {
    const auto w = heatctl::kernelbounds::l2_window_upper(
        box->dom, to_point(y, box->dom.dim), T1, T2, epsilon, a_eps, nterms);
    *lhs = w.lhs;
    *rhs = w.rhs;
    if (dbar_sq) *dbar_sq = w.dbar_sq;
    if (tail_fraction) *tail_fraction = w.tail_fraction;
  });
}

heatctl_status heatctl_cube_lower_rhs(double t, double half_diagonal, int n, int corrected,
                                      double* out) {
  if (!out) return fail_arg("null argument");
  return guarded([&] {
    *out = heatctl::kernelbounds::cube_lower_rhs(
        t, half_diagonal, n,
        corrected ? heatctl::kernelbounds::CubeVariant::corrected
                  : heatctl::kernelbounds::CubeVariant::paper);
  });
}

heatctl_status heatctl_l2_lower_check(const double* edges, size_t dim, const double* y, double t,
                                      size_t nterms, size_t grid_per_axis,
                                      double* integral_modal, double* integral_quadrature,
                                      double* principal_bound) {
  if (!edges || !y || !integral_modal || !principal_bound) return fail_arg("null argument");
  return guarded([&] {
    const auto c = heatctl::kernelbounds::l2_lower_check(std::span(edges, dim),
                                                         std::span(y, dim), t, nterms,
                                                         grid_per_axis ? grid_per_axis : 128);
    *integral_modal = c.integral_modal;
    if (integral_quadrature) *integral_quadrature = c.integral_quadrature;
    *principal_bound = c.principal_bound;
  });
}

/* ---------------- geometry ---------------- */

heatctl_status heatctl_domain_scenario(const heatctl_scenario* spec, heatctl_domain** out) {
  if (!spec || !out) return fail_arg("null argument");
  return guarded([&] {
    using heatctl::geometry::ScenarioKind;
    heatctl::geometry::ScenarioSpec s;
    switch (spec->kind) {
      case 0:
        s.kind = ScenarioKind::strip;
        break;
      case 1:
        s.kind = ScenarioKind::rod_with_interior_rod;
        break;
      case 2:
        s.kind = ScenarioKind::rod_with_slabs;
        break;
      case 3:
        s.kind = ScenarioKind::rod_shrinking_cylinder_control;
        break;
      case 4:
        s.kind = ScenarioKind::shrinking_rod;
        break;
      default:
        throw heatctl::Error(heatctl::ErrorCode::invalid_argument, "unknown scenario kind");
    }
    s.h = spec->h;
    s.strip_width = spec->strip_width;
    s.section_shape = spec->section_square ? "square" : "disk";
    s.section_radius = spec->section_radius;
    s.omega_radius = spec->omega_radius;
    s.omega_zmax = spec->omega_zmax;
    s.axis_min = spec->axis_min;
    s.axis_max = spec->axis_max;
    for (size_t i = 0; i < spec->n_slabs; ++i)
      s.slabs.push_back({spec->slab_centers[i], spec->slab_half_widths[i]});
    s.profile = to_profile(spec->profile);
    s.max_point_z = spec->max_point_z;
    *out = new heatctl_domain{heatctl::geometry::build_scenario(s)};
  });
}

heatctl_status heatctl_domain_box(const double* edges, size_t dim, double h,
                                  heatctl_domain** out) {
  if (!edges || !out) return fail_arg("null argument");
  return guarded([&] {
    *out = new heatctl_domain{heatctl::geometry::make_box_domain(std::span(edges, dim), h)};
  });
}

heatctl_status heatctl_domain_add_omega_box(heatctl_domain* d, const double* lo,
                                            const double* hi) {
  if (!d || !lo || !hi) return fail_arg("null argument");
  return guarded([&] {
    heatctl::geometry::add_omega_box(d->dom, to_point(lo, d->dom.dim), to_point(hi, d->dom.dim));
  });
}

heatctl_status heatctl_domain_custom(int dim, const size_t* dims, double h, const double* origin,
                                     const unsigned char* mask, const unsigned char* omega,
                                     heatctl_domain** out) {
  if (!dims || !origin || !mask || !omega || !out) return fail_arg("null argument");
  return guarded([&] {
    heatctl::geometry::GridDomain d;
    d.dim = dim;
    d.h = h;
    for (int a = 0; a < 3; ++a) {
      d.dims[a] = a < dim ? dims[a] : 1;
      d.origin[a] = a < dim ? origin[a] : 0.0;
    }
    d.mask.assign(mask, mask + d.cells());
    d.omega.assign(omega, omega + d.cells());
    d.validate();
    *out = new heatctl_domain{std::move(d)};
  });
}

void heatctl_domain_free(heatctl_domain* d) { delete d; }

int heatctl_domain_dim(const heatctl_domain* d) { return d ? d->dom.dim : 0; }

double heatctl_domain_spacing(const heatctl_domain* d) { return d ? d->dom.h : 0.0; }

heatctl_status heatctl_domain_dims(const heatctl_domain* d, size_t* dims3) {
  if (!d || !dims3) return fail_arg("null argument");
  for (int a = 0; a < 3; ++a) dims3[a] = d->dom.dims[a];
  return HEATCTL_OK;
}

heatctl_status heatctl_domain_origin(const heatctl_domain* d, double* origin3) {
  if (!d || !origin3) return fail_arg("null argument");
  for (int a = 0; a < 3; ++a) origin3[a] = d->dom.origin[a];
  return HEATCTL_OK;
}

double heatctl_domain_measure(const heatctl_domain* d) { return d ? d->dom.measure() : 0.0; }

double heatctl_domain_omega_measure(const heatctl_domain* d) {
  return d ? d->dom.omega_measure() : 0.0;
}

heatctl_status heatctl_domain_masks(const heatctl_domain* d, unsigned char* mask,
                                    unsigned char* omega, size_t len) {
  if (!d) return fail_arg("null argument");
  if (len < d->dom.cells()) return fail_arg("buffer too small");
  if (mask) std::memcpy(mask, d->dom.mask.data(), d->dom.cells());
  if (omega) std::memcpy(omega, d->dom.omega.data(), d->dom.cells());
  return HEATCTL_OK;
}

heatctl_status heatctl_domain_omega_weights(const heatctl_domain* d, double* buf, size_t len) {
  if (!d || !buf) return fail_arg("null argument");
  if (len < d->dom.cells()) return fail_arg("buffer too small");
  for (size_t i = 0; i < d->dom.cells(); ++i)
    buf[i] = d->dom.omega[i] ? d->dom.weight(i) : 0.0;
  return HEATCTL_OK;
}

heatctl_status heatctl_distance_field(const heatctl_domain* d, const double* y,
                                      heatctl_field** out) {
  if (!d || !y || !out) return fail_arg("null argument");
  return guarded([&] {
    *out = new heatctl_field{
        heatctl::geometry::geodesic_distance_field(d->dom, to_point(y, d->dom.dim))};
  });
}

void heatctl_field_free(heatctl_field* f) { delete f; }

heatctl_status heatctl_field_values(const heatctl_field* f, double* buf, size_t len) {
  if (!f || !buf) return fail_arg("null argument");
  if (len < f->field.dist.size()) return fail_arg("buffer too small");
  std::memcpy(buf, f->field.dist.data(), f->field.dist.size() * sizeof(double));
  return HEATCTL_OK;
}

heatctl_status heatctl_field_boundary_distance(const heatctl_field* f, double* out) {
  if (!f || !out) return fail_arg("null argument");
  *out = f->field.boundary_distance;
  return HEATCTL_OK;
}

heatctl_status heatctl_boundary_distance(const heatctl_domain* d, const double* y,
                                         int half_cell_correction, double* out) {
  if (!d || !y || !out) return fail_arg("null argument");
  return guarded([&] {
    *out = heatctl::geometry::boundary_distance(d->dom, to_point(y, d->dom.dim),
                                                half_cell_correction != 0);
  });
}

heatctl_status heatctl_averaged_distance(const heatctl_domain* d, const double* y, double T,
                                         int euclidean, double* dbar_sq, double* d_min,
                                         double* log_integral, int* tail_ok) {
  if (!d || !y || !dbar_sq) return fail_arg("null argument");
  return guarded([&] {
    const auto avg = heatctl::geometry::averaged_distance(
        d->dom, to_point(y, d->dom.dim), T,
        euclidean ? heatctl::geometry::DistanceMetric::euclidean
                  : heatctl::geometry::DistanceMetric::geodesic);
    *dbar_sq = avg.dbar_sq;
    if (d_min) *d_min = avg.d_min;
    if (log_integral) *log_integral = avg.log_integral;
    if (tail_ok) *tail_ok = avg.tail_ok ? 1 : 0;
  });
}

double heatctl_bounded_distance(double d_boundary, double T, int n) {
  try {
    return heatctl::geometry::bounded_distance(d_boundary, T, n);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1.0;
  }
}

heatctl_status heatctl_gnc_evaluate(const heatctl_domain* d, const double* points, size_t k,
                                    double tbar, double kappa, int corrected,
                                    size_t divergence_start, double divergence_threshold,
                                    heatctl_gnc_row* rows, heatctl_gnc_summary* summary) {
  if (!d || !points || !rows) return fail_arg("null argument");
  return guarded([&] {
    std::vector<heatctl::geometry::Point> pts(k);
    for (size_t i = 0; i < k; ++i) pts[i] = {points[3 * i], points[3 * i + 1], points[3 * i + 2]};
    heatctl::geometry::GncOptions opts;
    opts.divergence_start = divergence_start;
    opts.divergence_threshold = divergence_threshold;
    const auto rep = heatctl::geometry::gnc_evaluate(
        d->dom, pts, tbar, kappa,
        corrected ? heatctl::geometry::ConstantVariant::corrected
                  : heatctl::geometry::ConstantVariant::paper,
        opts);
    for (size_t i = 0; i < rep.points.size(); ++i) {
      const auto& p = rep.points[i];
      rows[i].y[0] = p.y[0];
      rows[i].y[1] = p.y[1];
      rows[i].y[2] = p.y[2];
      rows[i].dbar_sq = p.dbar_sq;
      rows[i].d_boundary = p.d_boundary;
      rows[i].d_bounded_tbar = p.d_bounded_tbar;
      rows[i].d_bounded_tdbar = p.d_bounded_tdbar;
      rows[i].value = p.value;
      rows[i].s = p.s;
    }
    if (summary) {
      summary->tbar = rep.tbar;
      summary->kappa = rep.kappa;
      summary->epsilon = rep.epsilon;
      summary->kappa_prime = rep.kappa_prime;
      summary->tdbar = rep.tdbar;
      summary->variant_corrected = corrected ? 1 : 0;
      summary->divergent = rep.divergent ? 1 : 0;
    }
  });
}

heatctl_status heatctl_rod_iii_upper(const heatctl_profile* profile, double T, double z_k,
                                     double axis_min, double axis_max, size_t simpson_cells,
                                     double* value, double* tail) {
  if (!profile || !value) return fail_arg("null argument");
  return guarded([&] {
    const auto b = heatctl::geometry::rod_iii_upper(to_profile(*profile), T, z_k, axis_min,
                                                    axis_max,
                                                    simpson_cells ? simpson_cells : 8192);
    *value = b.value;
    if (tail) *tail = b.tail_bound;
  });
}

heatctl_status heatctl_shrinkrod_check(const heatctl_profile* profile, const double* zs,
                                       const double* ds, size_t k, double kappa_prime, double T,
                                       int n, const heatctl_domain* scenario,
                                       size_t divergence_start, double divergence_threshold,
                                       heatctl_shrinkrod_row* rows, int* divergent,
                                       int* reductions_hold) {
  if (!profile || !zs || !ds || !rows) return fail_arg("null argument");
  return guarded([&] {
    heatctl::geometry::GncOptions opts;
    opts.divergence_start = divergence_start;
    opts.divergence_threshold = divergence_threshold;
    const auto rep = heatctl::geometry::shrinkrod_check(
        to_profile(*profile), std::span(zs, k), std::span(ds, k), kappa_prime, T, n,
        scenario ? &scenario->dom : nullptr, opts);
    for (size_t i = 0; i < rep.entries.size(); ++i) {
      const auto& e = rep.entries[i];
      rows[i] = {e.z, e.d, e.q, e.boundary_margin, e.omega_margin, e.boundary_ok ? 1 : 0,
                 e.omega_ok ? 1 : 0};
    }
    if (divergent) *divergent = rep.divergent ? 1 : 0;
    if (reductions_hold) *reductions_hold = rep.reductions_hold ? 1 : 0;
  });
}

}  // extern "C"
