/* heatctl -- observability, control cost and heat-kernel toolkit for
 * finite-dimensional Dirichlet heat systems on intervals, boxes and rods.
 *
 * C interface of the shared library.  All functions return a heatctl_status;
 * on failure heatctl_last_error() describes the problem (thread local).
 * Handles are opaque and must be released with the matching _free call.
 */
#ifndef HEATCTL_H
#define HEATCTL_H

#include <stddef.h>

#if defined(_WIN32)
#define HEATCTL_API __declspec(dllexport)
#else
#define HEATCTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum heatctl_status {
  HEATCTL_OK = 0,
  HEATCTL_ERR_INVALID_ARGUMENT = 1,
  HEATCTL_ERR_SINGULAR = 2,     /* SPD solve on a singular/indefinite matrix */
  HEATCTL_ERR_HYPOTHESIS = 3,   /* violated mathematical hypothesis */
  HEATCTL_ERR_SIZE_LIMIT = 4,   /* configured size cap exceeded */
  HEATCTL_ERR_RESOLUTION = 5,   /* quadrature/truncation certificate failed */
  HEATCTL_ERR_NO_CONVERGENCE = 6,
  HEATCTL_ERR_IO = 7,
  HEATCTL_ERR_INTERNAL = 8
} heatctl_status;

HEATCTL_API const char* heatctl_last_error(void);
HEATCTL_API const char* heatctl_version(void);

/* ------------------------------------------------------------------ */
/* Spectral systems                                                     */
/* ------------------------------------------------------------------ */

typedef struct heatctl_system heatctl_system;

/* Dirichlet interval spectrum (k pi / L)^2, no observation. */
HEATCTL_API heatctl_status heatctl_system_interval_spectrum(double length, size_t modes,
                                                            heatctl_system** out);

/* Interval spectrum observed through the boundary normal derivative at 0. */
HEATCTL_API heatctl_status heatctl_system_boundary_observation(double length, size_t modes,
                                                               heatctl_system** out);

/* Interval spectrum observed on a union of subintervals (midpoint quadrature
 * rows).  interval_bounds holds lo,hi pairs. */
HEATCTL_API heatctl_status heatctl_system_interior_observation(
    double length, size_t modes, const double* interval_bounds, size_t n_intervals,
    size_t nodes_per_interval, heatctl_system** out);

/* Arbitrary diagonal system: rates ascending >= 0, obs row-major q x modes
 * (obs may be NULL when outputs == 0). */
HEATCTL_API heatctl_status heatctl_system_custom(const double* rates, size_t modes,
                                                 const double* obs, size_t outputs,
                                                 heatctl_system** out);

/* Kronecker sum of an observed factor with a non-positive diagonal fiber
 * generator; the assembled system has rates lambda_j - b_m and observation
 * C (x) I.  Fails with HEATCTL_ERR_HYPOTHESIS when some b_m > 0. */
HEATCTL_API heatctl_status heatctl_system_kronecker_sum(const heatctl_system* factor,
                                                        const double* bvals, size_t m,
                                                        size_t size_limit, heatctl_system** out);

HEATCTL_API void heatctl_system_free(heatctl_system* sys);
HEATCTL_API size_t heatctl_system_modes(const heatctl_system* sys);
HEATCTL_API size_t heatctl_system_outputs(const heatctl_system* sys);
HEATCTL_API heatctl_status heatctl_system_rates(const heatctl_system* sys, double* buf,
                                                size_t len);
HEATCTL_API heatctl_status heatctl_system_observation(const heatctl_system* sys, double* buf,
                                                      size_t len);

/* ------------------------------------------------------------------ */
/* Observability and control                                            */
/* ------------------------------------------------------------------ */

typedef struct heatctl_cost_report {
  double horizon;
  double kappa;        /* +inf when a decaying direction is unobserved */
  double kappa_sq;
  double log_kappa_sq; /* finite even when kappa_sq overflows double */
  double admissibility;
  double min_gramian_eigenvalue;
  size_t modes;
  int is_infinite;
} heatctl_cost_report;

/* Null-controllability cost through the pencil (E, G).  quad_precision != 0
 * evaluates the pencil in 128-bit floats (needed for small horizons). */
HEATCTL_API heatctl_status heatctl_control_cost(const heatctl_system* sys, double T,
                                                int quad_precision, heatctl_cost_report* out);

HEATCTL_API heatctl_status heatctl_admissibility_constant(const heatctl_system* sys, double T,
                                                          double* out);

/* HUM minimal-norm control sampled on a uniform grid of `samples` times.
 * times must hold `samples` doubles and values samples*outputs doubles. */
HEATCTL_API heatctl_status heatctl_min_norm_control(const heatctl_system* sys, double T,
                                                    const double* zeta0, size_t n, size_t samples,
                                                    double* times, double* values,
                                                    double* energy_sq_modal,
                                                    double* energy_sq_trapezoid,
                                                    double* terminal_residual);

/* ||e^{TA} f0||^2 / (f0' G f0); +inf when the denominator vanishes. */
HEATCTL_API heatctl_status heatctl_observability_quotient(const heatctl_system* sys, double T,
                                                          const double* f0, size_t n,
                                                          double* out);

/* Same quotient for separable data fx (x) fy on the product of `factor` with
 * a diagonal non-positive fiber generator, evaluated fiberwise. */
HEATCTL_API heatctl_status heatctl_product_observability_quotient(
    const heatctl_system* factor, const double* bvals, size_t m, double T, const double* fx,
    size_t nx, const double* fy, size_t ny, double* out);

/* Normalized fast-control log-costs T ln kappa_T / L^2 for the boundary
 * observed interval; the mode count is coupled to T by the rate cutoff
 * lambda_N >= coeff / T and reported per horizon. */
HEATCTL_API heatctl_status heatctl_alpha_star_probe(double length, const double* horizons,
                                                    size_t n, double rate_cutoff_coeff,
                                                    double* values, size_t* mode_counts);

/* ------------------------------------------------------------------ */
/* Tensor products                                                      */
/* ------------------------------------------------------------------ */

typedef struct heatctl_lemma_check {
  double kappa_product;
  double kappa_factor;
  double kappa_fiber_max;
  double admissibility_product;
  double admissibility_factor;
  double tolerance;
  size_t worst_fiber;
  int pass_inequality; /* kappa_product <= kappa_factor (1 + tol) */
  int pass_decoupling; /* kappa_product == max fiber kappa within tol */
  int pass;
} heatctl_lemma_check;

HEATCTL_API heatctl_status heatctl_tensor_check(const heatctl_system* factor,
                                                const double* bvals, size_t m, double T,
                                                double tolerance, heatctl_lemma_check* out);

HEATCTL_API heatctl_status heatctl_product_cost(const heatctl_system* factor,
                                                const double* bvals, size_t m, double T,
                                                size_t size_limit, heatctl_cost_report* out);

/* out must hold m cost reports (one per fiber shift). */
HEATCTL_API heatctl_status heatctl_fiber_costs(const heatctl_system* factor, const double* bvals,
                                               size_t m, double T, heatctl_cost_report* out);

/* ------------------------------------------------------------------ */
/* Heat kernels and bounds                                              */
/* ------------------------------------------------------------------ */

HEATCTL_API heatctl_status heatctl_interval_kernel(double length, double t, double x, double y,
                                                   size_t nterms, double* value, double* tail);

HEATCTL_API heatctl_status heatctl_kernel_auto_terms(double length, double t, double tail_target,
                                                     size_t* out);

HEATCTL_API heatctl_status heatctl_box_kernel(const double* edges, size_t dim, double t,
                                              const double* x, const double* y, size_t nterms,
                                              double* value, double* tail);

/* Empirical Gaussian-bound constant: sup over the sample grid of
 * K(t,x,y) t^{n/2} exp(|x-y|^2 / (4(1+eps)t)).  xs and ys are row-major
 * nxs x dim and nys x dim. */
HEATCTL_API heatctl_status heatctl_fit_gaussian_constant(const double* edges, size_t dim,
                                                         double epsilon, const double* ts,
                                                         size_t nts, const double* xs, size_t nxs,
                                                         const double* ys, size_t nys,
                                                         size_t nterms, double* out);

typedef struct heatctl_domain heatctl_domain;

/* Both sides of the L2 window upper bound on a box domain with a control
 * mask: lhs = int_{T1}^{T2} int_Omega K^2, rhs from the averaged distance. */
HEATCTL_API heatctl_status heatctl_l2_window_upper(const heatctl_domain* box, const double* y,
                                                   double T1, double T2, double epsilon,
                                                   double a_eps, size_t nterms, double* lhs,
                                                   double* rhs, double* dbar_sq,
                                                   double* tail_fraction);

/* corrected == 0 evaluates the published constant n^{n/2}/(2d)^n
 * exp(-pi^2 n^2 t / (8 d^2)); corrected != 0 evaluates the standard cube
 * eigenpair variant n^{n/2}/d^n exp(-pi^2 n^2 t / (2 d^2)). */
HEATCTL_API heatctl_status heatctl_cube_lower_rhs(double t, double half_diagonal, int n,
                                                  int corrected, double* out);

HEATCTL_API heatctl_status heatctl_l2_lower_check(const double* edges, size_t dim,
                                                  const double* y, double t, size_t nterms,
                                                  size_t grid_per_axis, double* integral_modal,
                                                  double* integral_quadrature,
                                                  double* principal_bound);

/* ------------------------------------------------------------------ */
/* Grid domains and geometry                                            */
/* ------------------------------------------------------------------ */

typedef struct heatctl_profile {
  int kind;  /* 0 constant R0=p0 | 1 min(p0, p1/(1+|z|)) | 2 1/log(p0+|z|) | 3 p0 e^{-p1 |z|} */
  double p0;
  double p1;
} heatctl_profile;

typedef struct heatctl_scenario {
  int kind;             /* 0 strip | 1 rod-with-interior-rod | 2 rod-with-slabs |
                           3 rod-shrinking-cylinder-control | 4 shrinking-rod */
  double h;
  double strip_width;   /* strip: L */
  int section_square;   /* rods: 0 disk, 1 square */
  double section_radius;
  double omega_radius;  /* interior rod radius */
  double omega_zmax;    /* shrinking rod: omega = {|z| <= omega_zmax} */
  double axis_min;      /* truncation of the unbounded axis */
  double axis_max;
  const double* slab_centers;
  const double* slab_half_widths;
  size_t n_slabs;
  heatctl_profile profile;
  double max_point_z;   /* largest z any query point will use (validated) */
} heatctl_scenario;

HEATCTL_API heatctl_status heatctl_domain_scenario(const heatctl_scenario* spec,
                                                   heatctl_domain** out);

/* Box (0,e1) x ... x (0,en) with empty control mask. */
HEATCTL_API heatctl_status heatctl_domain_box(const double* edges, size_t dim, double h,
                                              heatctl_domain** out);

HEATCTL_API heatctl_status heatctl_domain_add_omega_box(heatctl_domain* d, const double* lo,
                                                        const double* hi);

/* Fully custom masked lattice (cell centers at origin + (i+1/2)h). */
HEATCTL_API heatctl_status heatctl_domain_custom(int dim, const size_t* dims, double h,
                                                 const double* origin, const unsigned char* mask,
                                                 const unsigned char* omega,
                                                 heatctl_domain** out);

HEATCTL_API void heatctl_domain_free(heatctl_domain* d);
HEATCTL_API int heatctl_domain_dim(const heatctl_domain* d);
HEATCTL_API double heatctl_domain_spacing(const heatctl_domain* d);
HEATCTL_API heatctl_status heatctl_domain_dims(const heatctl_domain* d, size_t* dims3);
HEATCTL_API heatctl_status heatctl_domain_origin(const heatctl_domain* d, double* origin3);
HEATCTL_API double heatctl_domain_measure(const heatctl_domain* d);
HEATCTL_API double heatctl_domain_omega_measure(const heatctl_domain* d);
HEATCTL_API heatctl_status heatctl_domain_masks(const heatctl_domain* d, unsigned char* mask,
                                                unsigned char* omega, size_t len);

/* Area fraction of each omega cell (1 for plain boolean control regions). */
HEATCTL_API heatctl_status heatctl_domain_omega_weights(const heatctl_domain* d, double* buf,
                                                        size_t len);

typedef struct heatctl_field heatctl_field;

/* Shortest-path distances from y over the cell-center graph (Dijkstra with
 * 2/16/26-neighbor stencils in 1/2/3 dimensions). */
HEATCTL_API heatctl_status heatctl_distance_field(const heatctl_domain* d, const double* y,
                                                  heatctl_field** out);
HEATCTL_API void heatctl_field_free(heatctl_field* f);
HEATCTL_API heatctl_status heatctl_field_values(const heatctl_field* f, double* buf, size_t len);
HEATCTL_API heatctl_status heatctl_field_boundary_distance(const heatctl_field* f, double* out);

HEATCTL_API heatctl_status heatctl_boundary_distance(const heatctl_domain* d, const double* y,
                                                     int half_cell_correction, double* out);

/* Averaged distance dbar_T(y, Omega)^2 = -2T log int_Omega e^{-d^2/2T}.
 * euclidean != 0 replaces the geodesic metric by |x - y| (convex domains). */
HEATCTL_API heatctl_status heatctl_averaged_distance(const heatctl_domain* d, const double* y,
                                                     double T, int euclidean, double* dbar_sq,
                                                     double* d_min, double* log_integral,
                                                     int* tail_ok);

HEATCTL_API double heatctl_bounded_distance(double d_boundary, double T, int n);

typedef struct heatctl_gnc_row {
  double y[3];
  double dbar_sq;
  double d_boundary;
  double d_bounded_tbar;
  double d_bounded_tdbar;
  double value; /* dbar^2 - kappa c_n (Tbar / bounded distance)^2 */
  double s;     /* normalized divergence sequence */
} heatctl_gnc_row;

typedef struct heatctl_gnc_summary {
  double tbar;
  double kappa;
  double epsilon;
  double kappa_prime;
  double tdbar;
  int variant_corrected;
  int divergent; /* numerical divergence proxy, never a proof */
} heatctl_gnc_summary;

/* Geometric-necessary-condition sequence at the given points (row-major
 * 3 x k coordinates).  rows must hold k entries. */
HEATCTL_API heatctl_status heatctl_gnc_evaluate(const heatctl_domain* d, const double* points,
                                                size_t k, double tbar, double kappa,
                                                int corrected, size_t divergence_start,
                                                double divergence_threshold,
                                                heatctl_gnc_row* rows,
                                                heatctl_gnc_summary* summary);

/* pi int R(z)^2 exp(-(z-z_k)^2 / 2T) dz over the truncated axis. */
HEATCTL_API heatctl_status heatctl_rod_iii_upper(const heatctl_profile* profile, double T,
                                                 double z_k, double axis_min, double axis_max,
                                                 size_t simpson_cells, double* value,
                                                 double* tail);

typedef struct heatctl_shrinkrod_row {
  double z;
  double d;
  double q; /* d^2 - kappa' (pi^2 n^2 / 4)(T / R(z+d))^2 */
  double boundary_margin;
  double omega_margin;
  int boundary_ok;
  int omega_ok;
} heatctl_shrinkrod_row;

/* Shrinking-rod divergence sequence plus grid verification of the
 * boundary/omega distance reductions when a scenario domain is supplied
 * (pass NULL to skip).  rows must hold k entries. */
HEATCTL_API heatctl_status heatctl_shrinkrod_check(const heatctl_profile* profile,
                                                   const double* zs, const double* ds, size_t k,
                                                   double kappa_prime, double T, int n,
                                                   const heatctl_domain* scenario,
                                                   size_t divergence_start,
                                                   double divergence_threshold,
                                                   heatctl_shrinkrod_row* rows, int* divergent,
                                                   int* reductions_hold);

#ifdef __cplusplus
}
#endif

#endif /* HEATCTL_H */
