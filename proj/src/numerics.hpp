#pragma once

#include <cstddef>
#include <vector>

#include "error.hpp"

namespace heatctl::numerics {

using Vector = std::vector<double>;

/// Dense row-major matrix, the workhorse container for observation rows and
/// eigenvector columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = data_[i * cols_ + j];
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix stored full row-major; the builder interface keeps the
/// two triangles bitwise identical.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : order_(order), data_(order * order, 0.0) {}

  /// Symmetrizes an arbitrary square array: (a + a')/2.
  static SymMatrix from_dense(std::size_t order, const std::vector<double>& a);

  std::size_t order() const { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * order_ + j] = v;
    data_[j * order_ + i] = v;
  }
  const std::vector<double>& data() const { return data_; }

  double max_abs() const;
  bool finite() const;

  Vector multiply(const Vector& v) const;

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

struct EigDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, eigenvectors[.][k] pairs with eigenvalues[k]
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
/// Contract: ||A - Q L Q'||_max <= 1e-10 ||A||_max and ||Q'Q - I||_max <= 1e-10.
EigDecomposition sym_eig(const SymMatrix& a);

struct GenEigReport {
  double value = 0.0;  // +infinity when some null direction of g carries energy of e
  bool infinite = false;
  Vector maximizer;       // unit vector attaining the sup (finite case)
  Vector null_direction;  // witness (infinite case)
  double min_g_eigenvalue = 0.0;
  double max_g_eigenvalue = 0.0;
};

/// sup_z z'ez / z'gz over z outside ker(g), for PSD pencils (e, g).
/// Null space of g detected at null_space_tol relative to lambda_max(g).
double gen_eig_max(const SymMatrix& e, const SymMatrix& g, double null_space_tol = 1e-12);
GenEigReport gen_eig_max_report(const SymMatrix& e, const SymMatrix& g,
                                double null_space_tol = 1e-12, bool want_maximizer = false);

/// Solve g x = rhs for positive definite g (smallest eigenvalue must exceed
/// 1e-12 of the largest, else SingularSystemError).  Residual contract:
/// ||g x - rhs|| <= 1e-10 ||rhs||.
Vector solve_spd(const SymMatrix& g, const Vector& rhs, double definiteness_tol = 1e-12);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);

}  // namespace heatctl::numerics
