#include "numerics.hpp"

#include <cmath>

#include "jacobi.hpp"

namespace heatctl::numerics {

SymMatrix SymMatrix::from_dense(std::size_t order, const std::vector<double>& a) {
  if (a.size() != order * order)
    throw Error(ErrorCode::invalid_argument, "from_dense: size mismatch");
  SymMatrix s(order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = i; j < order; ++j)
      s.set(i, j, 0.5 * (a[i * order + j] + a[j * order + i]));
  return s;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

bool SymMatrix::finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Vector SymMatrix::multiply(const Vector& v) const {
  if (v.size() != order_) throw Error(ErrorCode::invalid_argument, "multiply: size mismatch");
  Vector out(order_, 0.0);
  for (std::size_t i = 0; i < order_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < order_; ++j) sum += data_[i * order_ + j] * v[j];
    out[i] = sum;
  }
  return out;
}

EigDecomposition sym_eig(const SymMatrix& a) {
  if (!a.finite()) throw Error(ErrorCode::invalid_argument, "sym_eig: non-finite entries");
  const std::size_t n = a.order();
  std::vector<double> vecs;
  std::vector<double> vals = jacobi_eigensolve<double>(n, a.data(), &vecs);
  EigDecomposition d;
  d.eigenvalues = std::move(vals);
  d.eigenvectors = Matrix(n, n);
  d.eigenvectors.data() = std::move(vecs);
  return d;
}

GenEigReport gen_eig_max_report(const SymMatrix& e, const SymMatrix& g, double null_space_tol,
                                bool want_maximizer) {
  if (e.order() != g.order())
    throw Error(ErrorCode::invalid_argument, "gen_eig_max: order mismatch");
  if (!e.finite() || !g.finite())
    throw Error(ErrorCode::invalid_argument, "gen_eig_max: non-finite entries");
  GenEigOptions<double> opts;
  opts.null_space_tol = null_space_tol;
  GenEigOutcome<double> out =
      gen_eig_max_impl<double>(e.order(), e.data(), g.data(), want_maximizer, opts);
  GenEigReport r;
  r.value = out.value;
  r.infinite = out.infinite;
  r.maximizer = std::move(out.maximizer);
  r.null_direction = std::move(out.null_direction);
  r.min_g_eigenvalue = out.min_g_eigenvalue;
  r.max_g_eigenvalue = out.max_g_eigenvalue;
  return r;
}

double gen_eig_max(const SymMatrix& e, const SymMatrix& g, double null_space_tol) {
  return gen_eig_max_report(e, g, null_space_tol, false).value;
}

Vector solve_spd(const SymMatrix& g, const Vector& rhs, double definiteness_tol) {
  const std::size_t n = g.order();
  if (rhs.size() != n) throw Error(ErrorCode::invalid_argument, "solve_spd: size mismatch");
  EigDecomposition d = sym_eig(g);
  const double dmax = d.eigenvalues.back();
  const double dmin = d.eigenvalues.front();
  if (!(dmin > definiteness_tol * dmax) || dmax <= 0.0)
    throw SingularSystemError(dmin, "solve_spd: matrix is not positive definite at tolerance");

  const Matrix& v = d.eigenvectors;
  auto apply_inverse = [&](const Vector& b) {
    Vector y(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += v(i, c) * b[i];
      proj /= d.eigenvalues[c];
      for (std::size_t i = 0; i < n; ++i) y[i] += v(i, c) * proj;
    }
    return y;
  };

  Vector x = apply_inverse(rhs);
  // Two refinement passes tighten the residual toward eps * ||g|| * ||x||.
  for (int pass = 0; pass < 2; ++pass) {
    Vector r = g.multiply(x);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    Vector dx = apply_inverse(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
  }
  return x;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace heatctl::numerics
