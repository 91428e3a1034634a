#include "tensorprod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace heatctl::tensorprod {

namespace {

void check_bvals(std::span<const double> bvals) {
  if (bvals.empty())
    throw Error(ErrorCode::invalid_argument, "tensor: fiber eigenvalue list is empty");
  for (double b : bvals) {
    if (!std::isfinite(b))
      throw Error(ErrorCode::invalid_argument, "tensor: fiber eigenvalues must be finite");
    if (b > 0.0)
      throw Error(ErrorCode::hypothesis_violation,
                  "tensor: fiber generator must be non-positive (found b > 0)");
  }
}

systems::SpectralSystem shifted_factor(const systems::SpectralSystem& factor, double b) {
  systems::SpectralSystem s = factor;
  for (double& r : s.rates) r -= b;
  return s;
}

}  // namespace

ProductSystem kronecker_sum(const systems::SpectralSystem& factor, std::span<const double> bvals,
                            std::size_t size_limit) {
  factor.validate();
  check_bvals(bvals);
  const std::size_t n = factor.modes();
  const std::size_t m = bvals.size();
  if (n * m > size_limit)
    throw Error(ErrorCode::size_limit, "tensor: assembled size exceeds the configured limit");

  ProductSystem p;
  p.factor = factor;
  p.bvals.assign(bvals.begin(), bvals.end());

  std::vector<double> rates(n * m);
  for (std::size_t fm = 0; fm < m; ++fm)
    for (std::size_t j = 0; j < n; ++j) rates[fm * n + j] = factor.rates[j] - bvals[fm];

  std::vector<std::size_t> order(n * m);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rates[a] < rates[b]; });

  p.index_map.assign(n * m, 0);
  p.assembled.rates.resize(n * m);
  for (std::size_t c = 0; c < order.size(); ++c) {
    p.assembled.rates[c] = rates[order[c]];
    p.index_map[order[c]] = c;
  }

  const std::size_t q = factor.outputs();
  p.assembled.obs = numerics::Matrix(q * m, n * m);
  for (std::size_t c = 0; c < order.size(); ++c) {
    const std::size_t fm = order[c] / n;
    const std::size_t j = order[c] % n;
    for (std::size_t r = 0; r < q; ++r) p.assembled.obs(fm * q + r, c) = factor.obs(r, j);
  }
  p.assembled.label = factor.label + " (x) fibers";
  p.assembled.validate();
  return p;
}

control::CostReport product_cost(const ProductSystem& p, double T,
                                 const control::CostOptions& opts, std::size_t size_limit) {
  if (p.assembled.modes() > size_limit)
    throw Error(ErrorCode::size_limit, "tensor: assembled size exceeds the configured limit");
  return control::control_cost(p.assembled, T, opts);
}

std::vector<control::CostReport> fiber_costs(const systems::SpectralSystem& factor,
                                             std::span<const double> bvals, double T,
                                             const control::CostOptions& opts) {
  factor.validate();
  check_bvals(bvals);
  std::vector<control::CostReport> out;
  out.reserve(bvals.size());
  for (double b : bvals) out.push_back(control::control_cost(shifted_factor(factor, b), T, opts));
  return out;
}

LemmaCheck check_lemma(const systems::SpectralSystem& factor, std::span<const double> bvals,
                       double T, double tolerance, const control::CostOptions& opts) {
  LemmaCheck chk;
  chk.tolerance = tolerance;

  const control::CostReport factor_rep = control::control_cost(factor, T, opts);
  chk.kappa_factor = factor_rep.kappa;
  chk.admissibility_factor = factor_rep.admissibility;

  const ProductSystem p = kronecker_sum(factor, bvals);
  const control::CostReport prod_rep = product_cost(p, T, opts);
  chk.kappa_product = prod_rep.kappa;
  chk.admissibility_product = prod_rep.admissibility;

  const std::vector<control::CostReport> fibers = fiber_costs(factor, bvals, T, opts);
  chk.kappa_fiber_max = 0.0;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    if (fibers[i].kappa >= chk.kappa_fiber_max) {
      chk.kappa_fiber_max = fibers[i].kappa;
      chk.worst_fiber = i;
    }
  }

  const bool prod_inf = std::isinf(chk.kappa_product);
  const bool factor_inf = std::isinf(chk.kappa_factor);
  const bool fiber_inf = std::isinf(chk.kappa_fiber_max);

  chk.pass_inequality = prod_inf ? factor_inf
                                 : chk.kappa_product <= chk.kappa_factor * (1.0 + tolerance);
  if (prod_inf || fiber_inf) {
    chk.pass_decoupling = prod_inf == fiber_inf;
  } else {
    const double scale = std::max({chk.kappa_product, chk.kappa_fiber_max, 1e-300});
    chk.pass_decoupling = std::fabs(chk.kappa_product - chk.kappa_fiber_max) <= tolerance * scale;
  }
  chk.pass = chk.pass_inequality && chk.pass_decoupling;
  return chk;
}

std::vector<double> non_positive_eigenvalues(const numerics::SymMatrix& b, double tol) {
  const numerics::EigDecomposition d = numerics::sym_eig(b);
  const double scale = std::max(std::fabs(d.eigenvalues.front()), std::fabs(d.eigenvalues.back()));
  std::vector<double> vals = d.eigenvalues;
  for (double& v : vals) {
    if (v > tol * std::max(scale, 1.0))
      throw Error(ErrorCode::hypothesis_violation,
                  "tensor: fiber generator has a positive eigenvalue");
    v = std::min(v, 0.0);  // clip eigensolver noise at zero
  }
  return vals;
}

double product_observability_quotient(const systems::SpectralSystem& factor,
                                      std::span<const double> bvals, double T,
                                      const numerics::Vector& fx, const numerics::Vector& fy) {
  factor.validate();
  check_bvals(bvals);
  if (T <= 0.0) throw Error(ErrorCode::invalid_argument, "quotient: T must be positive");
  const std::size_t n = factor.modes();
  const std::size_t m = bvals.size();
  if (fx.size() != n || fy.size() != m)
    throw Error(ErrorCode::invalid_argument, "quotient: data size mismatch");
  if (numerics::norm(fx) == 0.0 || numerics::norm(fy) == 0.0)
    throw Error(ErrorCode::invalid_argument, "quotient: data must be nonzero");

  double num_x = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::exp(-factor.rates[j] * T) * fx[j];
    num_x += d * d;
  }
  double num_y = 0.0;
  for (std::size_t fm = 0; fm < m; ++fm) {
    const double d = std::exp(bvals[fm] * T) * fy[fm];
    num_y += d * d;
  }

  // S = C'C once; each fiber then only re-weights it by its shifted phi.
  const std::size_t q = factor.outputs();
  std::vector<double> s(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t r = 0; r < q; ++r) acc += factor.obs(r, j) * factor.obs(r, k);
      s[j * n + k] = s[k * n + j] = acc;
    }

  double den = 0.0;
  for (std::size_t fm = 0; fm < m; ++fm) {
    double fiber = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double w = control::phi_decay_weight(
            factor.rates[j] + factor.rates[k] - 2.0 * bvals[fm], T);
        fiber += s[j * n + k] * fx[j] * fx[k] * w;
      }
    }
    den += fy[fm] * fy[fm] * fiber;
  }

  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  return num_x * num_y / den;
}

}  // namespace heatctl::tensorprod
