#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "scalar_traits.hpp"

namespace heatctl::numerics {

template <class Real>
struct JacobiOptions {
  // Stop when the off-diagonal Frobenius norm drops below rel_tol * ||A||_F.
  Real rel_tol = Real(1e-14);
  int max_sweeps = 64;
};

namespace detail {

// In-place cyclic Jacobi on a full row-major symmetric matrix.
// Eigenvalues end up on the diagonal (unsorted); if vecs != nullptr it must
// hold the n x n identity on entry and receives the accumulated rotations
// (columns are eigenvectors).
template <class Real>
void jacobi_cycle(std::size_t n, std::vector<Real>& a, std::vector<Real>* vecs,
                  const JacobiOptions<Real>& opts) {
  using ST = ScalarTraits<Real>;
  if (n <= 1) return;

  Real frob = Real(0);
  for (std::size_t i = 0; i < n * n; ++i) frob += a[i] * a[i];
  frob = ST::sqrt(frob);
  if (frob == Real(0)) return;

  const Real stop = opts.rel_tol * frob;
  // Entries at or below skip_tol cannot push the off-diagonal norm above
  // stop (there are fewer than n^2/2 of them), so rotations on them are
  // skipped.  This keeps block-diagonal inputs block-diagonal and cheap.
  const Real skip_tol = stop / Real(double(n));
  const Real theta_huge = Real(1) / ST::sqrt(ST::epsilon());

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    Real off2 = Real(0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += a[p * n + q] * a[p * n + q];
    if (ST::sqrt(Real(2) * off2) <= stop) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real apq = a[p * n + q];
        if (ST::abs(apq) <= skip_tol) continue;
        const Real app = a[p * n + p];
        const Real aqq = a[q * n + q];
        const Real theta = (aqq - app) / (Real(2) * apq);
        Real t;
        if (ST::abs(theta) > theta_huge) {
          t = Real(1) / (Real(2) * theta);
        } else {
          t = Real(1) / (ST::abs(theta) + ST::sqrt(Real(1) + theta * theta));
          if (theta < Real(0)) t = -t;
        }
        const Real c = Real(1) / ST::sqrt(Real(1) + t * t);
        const Real s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Real aip = a[i * n + p];
          const Real aiq = a[i * n + q];
          a[i * n + p] = a[p * n + i] = c * aip - s * aiq;
          a[i * n + q] = a[q * n + i] = s * aip + c * aiq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = Real(0);

        if (vecs) {
          std::vector<Real>& v = *vecs;
          for (std::size_t i = 0; i < n; ++i) {
            const Real vip = v[i * n + p];
            const Real viq = v[i * n + q];
            v[i * n + p] = c * vip - s * viq;
            v[i * n + q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  // One more norm check: the skip threshold may leave us just under stop.
  Real off2 = Real(0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) off2 += a[p * n + q] * a[p * n + q];
  if (ST::sqrt(Real(2) * off2) > stop)
    throw Error(ErrorCode::no_convergence, "jacobi eigensolver did not converge");
}

}  // namespace detail

// Eigendecomposition of a symmetric matrix given as a full row-major array.
// Returns eigenvalues ascending; if vecs != nullptr it receives the matching
// orthonormal eigenvector columns (row-major n x n).
template <class Real>
std::vector<Real> jacobi_eigensolve(std::size_t n, std::vector<Real> a,
                                    std::vector<Real>* vecs,
                                    const JacobiOptions<Real>& opts = {}) {
  if (vecs) {
    vecs->assign(n * n, Real(0));
    for (std::size_t i = 0; i < n; ++i) (*vecs)[i * n + i] = Real(1);
  }
  detail::jacobi_cycle(n, a, vecs, opts);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  std::vector<Real> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a[order[i] * n + order[i]];
  if (vecs) {
    std::vector<Real> sorted(n * n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) sorted[r * n + c] = (*vecs)[r * n + order[c]];
    *vecs = std::move(sorted);
  }
  return vals;
}

template <class Real>
struct GenEigOptions {
  // Directions of g with eigenvalue <= null_space_tol * lambda_max(g) count
  // as the null space of g.  Declared constant, configurable (the quad path
  // lowers it to match the wider exponent budget).
  Real null_space_tol = Real(1e-12);
  JacobiOptions<Real> eig{};
};

template <class Real>
struct GenEigOutcome {
  bool infinite = false;
  Real value = Real(0);               // sup z'ez / z'gz when finite
  std::vector<Real> maximizer;        // attaining z (unit norm), when requested and finite
  std::vector<Real> null_direction;   // witness when infinite
  Real min_g_eigenvalue = Real(0);
  Real max_g_eigenvalue = Real(0);
};

// Largest generalized eigenvalue of the pencil (e, g), both symmetric PSD,
// full row-major storage.  The supremum runs over z with z not in ker(g);
// it is +infinity iff e does not vanish on ker(g).
template <class Real>
GenEigOutcome<Real> gen_eig_max_impl(std::size_t n, const std::vector<Real>& e,
                                     std::vector<Real> g, bool want_maximizer,
                                     const GenEigOptions<Real>& opts = {}) {
  using ST = ScalarTraits<Real>;
  GenEigOutcome<Real> out;

  std::vector<Real> gvecs;
  const std::vector<Real> gvals = jacobi_eigensolve<Real>(n, std::move(g), &gvecs, opts.eig);
  out.min_g_eigenvalue = gvals.front();
  out.max_g_eigenvalue = gvals.back();

  Real e_diag_max = Real(0);
  for (std::size_t i = 0; i < n; ++i) e_diag_max = std::max(e_diag_max, e[i * n + i]);

  const Real gmax = std::max(gvals.back(), Real(0));
  const Real tau_g = opts.null_space_tol * gmax;
  const Real tau_e = opts.null_space_tol * e_diag_max;

  // e vanishes identically (PSD with zero diagonal): the quotient is 0 on
  // every admissible direction.
  if (e_diag_max <= Real(0)) {
    out.value = Real(0);
    return out;
  }

  std::vector<std::size_t> positive;
  positive.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (gvals[c] > tau_g) {
      positive.push_back(c);
      continue;
    }
    // Null direction of g: the sup is infinite if e sees it.
    Real quad = Real(0);
    for (std::size_t i = 0; i < n; ++i) {
      Real row = Real(0);
      for (std::size_t j = 0; j < n; ++j) row += e[i * n + j] * gvecs[j * n + c];
      quad += gvecs[i * n + c] * row;
    }
    if (quad > tau_e) {
      out.infinite = true;
      out.value = ST::infinity();
      out.null_direction.resize(n);
      for (std::size_t i = 0; i < n; ++i) out.null_direction[i] = gvecs[i * n + c];
      return out;
    }
  }

  const std::size_t p = positive.size();
  if (p == 0) {
    out.value = Real(0);
    return out;
  }

  // Whitened basis X = V_+ D_+^{-1/2}; columns inherit the (exact) sparsity
  // pattern of the eigenvectors, which gen_eig on block-diagonal Gramians
  // relies on for speed.
  std::vector<Real> x(n * p);
  for (std::size_t c = 0; c < p; ++c) {
    const Real scale = Real(1) / ST::sqrt(gvals[positive[c]]);
    for (std::size_t i = 0; i < n; ++i) x[i * p + c] = gvecs[i * n + positive[c]] * scale;
  }
  std::vector<std::size_t> lo(p, n), hi(p, 0);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < n; ++i)
      if (x[i * p + c] != Real(0)) {
        lo[c] = std::min(lo[c], i);
        hi[c] = std::max(hi[c], i + 1);
      }

  bool e_diagonal = true;
  for (std::size_t i = 0; i < n && e_diagonal; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (e[i * n + j] != Real(0)) {
        e_diagonal = false;
        break;
      }

  std::vector<Real> m(p * p, Real(0));
  if (e_diagonal) {
    for (std::size_t cj = 0; cj < p; ++cj) {
      for (std::size_t ck = cj; ck < p; ++ck) {
        const std::size_t a = std::max(lo[cj], lo[ck]);
        const std::size_t b = std::min(hi[cj], hi[ck]);
        Real sum = Real(0);
        for (std::size_t i = a; i < b; ++i) sum += e[i * n + i] * x[i * p + cj] * x[i * p + ck];
        m[cj * p + ck] = m[ck * p + cj] = sum;
      }
    }
  } else {
    std::vector<Real> ex(n);
    for (std::size_t ck = 0; ck < p; ++ck) {
      for (std::size_t i = 0; i < n; ++i) {
        Real sum = Real(0);
        for (std::size_t j = lo[ck]; j < hi[ck]; ++j) sum += e[i * n + j] * x[j * p + ck];
        ex[i] = sum;
      }
      for (std::size_t cj = 0; cj <= ck; ++cj) {
        Real sum = Real(0);
        for (std::size_t i = lo[cj]; i < hi[cj]; ++i) sum += x[i * p + cj] * ex[i];
        m[cj * p + ck] = m[ck * p + cj] = sum;
      }
    }
  }

  std::vector<Real> mvecs;
  const std::vector<Real> mvals =
      jacobi_eigensolve<Real>(p, std::move(m), want_maximizer ? &mvecs : nullptr, opts.eig);
  out.value = std::max(mvals.back(), Real(0));

  if (want_maximizer) {
    out.maximizer.assign(n, Real(0));
    for (std::size_t c = 0; c < p; ++c) {
      const Real w = mvecs[c * p + (p - 1)];
      for (std::size_t i = 0; i < n; ++i) out.maximizer[i] += x[i * p + c] * w;
    }
    Real norm = Real(0);
    for (std::size_t i = 0; i < n; ++i) norm += out.maximizer[i] * out.maximizer[i];
    norm = ST::sqrt(norm);
    if (norm > Real(0))
      for (std::size_t i = 0; i < n; ++i) out.maximizer[i] /= norm;
  }
  return out;
}

}  // namespace heatctl::numerics
