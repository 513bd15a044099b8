#pragma once

#include <cstddef>
#include <vector>

namespace spde2m {

/// Dense square matrix, row-major. Sized for the small quadratic forms
/// assembled from leading coefficients (dimension <= ~30 at desk scale).
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

    std::size_t dim() const { return dim_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    /// max |a_ij − a_ji|
    double symmetry_defect() const;
    /// max |a_ij|
    double max_abs() const;
    bool is_zero() const;

  private:
    std::size_t dim_ = 0;
    std::vector<double> a_;
};

Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);

/// Quadratic form x^T A x.
double quadratic_form(const Matrix& a, const std::vector<double>& x);

/// All eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi
/// rotations; the input must be symmetric (checked, hard error otherwise).
std::vector<double> symmetric_eigenvalues(const Matrix& a);

/// Smallest eigenvalue of a symmetric matrix.
double smallest_eigenvalue(const Matrix& a);

}  // namespace spde2m
